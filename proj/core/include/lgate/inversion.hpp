#pragma once

#include <utility>
#include <vector>

#include "lgate/admissibility.hpp"
#include "lgate/types.hpp"

namespace lgate {

/// Controls for inverting along the imaginary axis (contour abscissa 0).
struct InversionSettings {
    double tol = 5e-6;           // target truncation error
    double H_max = 1e6;          // cap on the truncation frequency
    int points_per_period = 16;  // samples per period of e^{i eta t} at the largest |t|
    int refine_limit = 4;        // panel halvings allowed beyond the initial layout
    double contour_abscissa = 0.0;

    /// Throws std::invalid_argument on inconsistent settings.
    void validate() const;
};

struct TruncationBound {
    double H = 0.0;
    double achieved_tol = 0.0;
    bool capped = false;
};

/// Smallest H with (c/pi) H^{1-b} / (b-1) <= tol, i.e. the envelope
/// c |eta|^{-b} integrates to at most tol over |eta| > H once divided by 2 pi.
/// When that H exceeds H_max the cap is returned together with the tail
/// bound actually achieved. Throws Refused for b <= 1.
TruncationBound truncation_bound(double c_hat, double b_hat, double tol,
                                 double H_max = InversionSettings{}.H_max);

struct InversionResult {
    TimeSignal signal;
    TruncationBound truncation;
    double quadrature_error = 0.0;  // largest |kronrod - gauss| / 2 pi over the grid
    int max_level = 0;              // deepest refinement used
    std::size_t node_count = 0;     // nodes of the initial layout
};

/// f(t) = (1/2 pi) int_{-H}^{H} e^{i t eta} F(i eta) d eta for every t.
///
/// Requires report.verdict == admissible unless `override_gate` is set.
/// With the override and a decay exponent that is not summable (b_hat <= 1
/// or unknown) the integral is truncated at H_max and the truncation error
/// is reported as unbounded. Points whose embedded error estimate stays
/// above tol/2 after refine_limit halvings mark the signal low-confidence.
InversionResult invert(const TransformFunction& F, const std::vector<double>& t_grid,
                       const InversionSettings& settings, const AdmissibilityReport& report,
                       bool override_gate = false);

/// I_N = (1/2 pi) int_{-N}^{N} F(i eta) d eta for each N.
std::vector<std::pair<double, Complex>> partial_sums_IN(const TransformFunction& F,
                                                        const std::vector<double>& N_list);

/// Least-squares slope of log|I_N| against log N; NaN if any I_N vanishes.
double partial_sum_slope(const std::vector<std::pair<double, Complex>>& table);

struct VerificationRecord {
    double sup_estimate = 0.0;
    double f0 = 0.0;         // |f(0)|
    double f0_limit = 0.0;   // tol plus quadrature error at t = 0
    bool f0_pass = false;
    double negative_max = 0.0;
    bool negative_pass = false;
    std::vector<std::pair<double, Complex>> in_table;
    double in_slope = 0.0;   // NaN when I_N vanishes identically
    bool in_pass = false;    // I_N shrinks towards zero
    bool bounded = false;    // sup_estimate finite
    bool all_pass = false;
};

inline const std::vector<double> default_negative_t_grid = {-5.0, -2.0, -1.0, -0.5, -0.1};
inline const std::vector<double> default_N_list = {1e2, 1e3, 1e4};

/// Checks the conclusions expected of an admissible transform on an
/// inverted signal: boundedness, f(0) = 0, causality and vanishing I_N.
VerificationRecord verify_conclusions(const TransformFunction& F, const InversionResult& inversion,
                                      const std::vector<double>& negative_t_grid,
                                      const InversionSettings& settings,
                                      const AdmissibilityReport& report, bool override_gate = false,
                                      const std::vector<double>& N_list = default_N_list);

}  // namespace lgate
