#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lgate/types.hpp"

namespace lgate {

/// Axis-aligned rectangle [s1, s2] x [eta1, eta2] in the p-plane.
struct Rect {
    double s1 = 0.1, s2 = 5.0;
    double eta1 = -5.0, eta2 = 5.0;

    double perimeter() const { return 2.0 * ((s2 - s1) + (eta2 - eta1)); }
    bool contains(Complex p) const {
        return p.real() > s1 && p.real() < s2 && p.imag() > eta1 && p.imag() < eta2;
    }
};

/// Sampling plan for the numerical admissibility probes.
struct ProbeSettings {
    // decay fit on +-i[eta_min, eta_max]
    double eta_min = 10.0;
    double eta_max = 1.0e4;
    int n_samples = 64;
    double decay_fit_max_residual = 0.1;
    double b_margin = 0.1;
    /// b_hat at or below 1 + b_fail_slack counts as a decisive failure.
    double b_fail_slack = 0.02;

    // semicircle profile
    std::vector<double> radii = {10.0, 100.0, 1000.0, 10000.0};
    int phi_count = 65;

    // Cauchy loops; loop 0 is loop_region itself, the rest are random
    int loop_count = 8;
    Rect loop_region{};
    std::uint64_t seed = 42;
    double loop_threshold = 1e-6;

    // growth bound |F| <= C / s
    std::vector<double> s_grid = default_s_grid();
    std::vector<double> growth_eta_grid = default_growth_eta_grid();

    /// Throws std::invalid_argument on inconsistent settings.
    void validate() const;

    static std::vector<double> default_s_grid();
    static std::vector<double> default_growth_eta_grid();
};

struct DecayFit {
    double b_hat = 0.0;
    double c_hat = 0.0;
    double fit_residual = 0.0;
    int used = 0;
    int dropped = 0;
};

/// Least-squares fit of log|F(i eta)| against log|eta| on a geometric grid
/// over both half-axes. b_hat is minus the slope; c_hat is the intercept
/// raised to the largest positive deviation, so c_hat |eta|^-b_hat bounds
/// every sample. Samples with F = 0 are dropped; more than half dropped
/// throws DomainError.
DecayFit estimate_decay(const TransformFunction& F, const ProbeSettings& settings);

struct SemicircleCheck {
    std::vector<std::pair<double, double>> profile;  // (radius, max |F|)
    std::vector<bool> reliable;
    bool pass = false;
    bool conclusive = true;
};

/// max over phi in [-pi/2, pi/2] of |F(R e^{i phi})| for each radius.
SemicircleCheck check_semicircle_decay(const TransformFunction& F, const ProbeSettings& settings);

struct GrowthCheck {
    double C_hat = 0.0;
    bool pass = false;
    bool conclusive = true;
};

/// C_hat = max over the grid of s |F(s + i eta)|; passes when s |F| stays
/// bounded at both ends of the s range and nowhere blows up.
GrowthCheck check_growth_bound(const TransformFunction& F, const std::vector<double>& s_grid,
                               const std::vector<double>& eta_grid);

struct LoopResidual {
    Rect rect;
    Complex integral;      // closed-loop integral of F dp, counter-clockwise
    double residual = 0.0; // |integral| / (perimeter * max |F| on the loop)
    bool reliable = true;
};

std::vector<LoopResidual> check_analyticity_loops(const TransformFunction& F,
                                                  const ProbeSettings& settings);

/// Counter-clockwise integral of F around one rectangle.
LoopResidual loop_integral(const TransformFunction& F, const Rect& rect);

enum class Verdict { admissible, inadmissible, inconclusive };

std::string to_string(Verdict v);

namespace condition {
inline constexpr const char* growth = "growth";
inline constexpr const char* semicircle = "semicircle_decay";
inline constexpr const char* decay = "decay(b>1)";
inline constexpr const char* decay_fit = "decay_fit";
inline constexpr const char* analyticity = "analyticity";
}  // namespace condition

struct AdmissibilityReport {
    double b_hat = 0.0;
    double c_hat = 0.0;
    double fit_residual = 0.0;
    std::vector<std::pair<double, double>> semicircle_max;
    std::optional<double> growth_C_hat;
    std::vector<double> loop_residuals;
    std::vector<LoopResidual> loops;
    Verdict verdict = Verdict::inconclusive;
    std::vector<std::string> failed_conditions;
    std::vector<std::string> inconclusive_conditions;
    std::vector<std::string> diagnostics;
};

/// Runs the four probes and combines them into a three-valued verdict.
AdmissibilityReport assess(const TransformFunction& F, const ProbeSettings& settings);

}  // namespace lgate
