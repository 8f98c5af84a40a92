#pragma once

#include <vector>

#include "lgate/admissibility.hpp"
#include "lgate/forward.hpp"
#include "lgate/inversion.hpp"
#include "lgate/types.hpp"

namespace lgate {

/// Q(p) = F_f(p) / (1 + p^{-lambda}) for 0 < |lambda| < 2. On Re p >= 0,
/// p != 0 the principal branch keeps |arg p^{-lambda}| < pi, so the
/// denominator never vanishes. Throws Refused outside that range.
TransformFunction transform_side(const TransformFunction& F_f, double lambda);

struct SolveSettings {
    ProbeSettings probe;
    InversionSettings inversion;
    std::vector<Complex> residual_p = {{0.5, 0.0}, {1.0, 0.0}, {2.0, 0.0}, {4.0, 0.0}};
    double residual_tol = 1e-3;
    double residual_step = 0.02;    // spacing of the internal grid q is sampled on for L(q)
    double residual_horizon_max = 60.0;
};

struct HyperSolveResult {
    InversionResult q;               // q on the caller's grid
    AdmissibilityReport Q_report;
    std::vector<ResidualSample> residuals;
    double q0_magnitude = 0.0;
    double residual_horizon = 0.0;   // T of the internal residual grid [0, T]
    bool verified = false;
};

/// Exception carrying the admissibility report of a refused Q.
class SolveRefused : public Refused {
public:
    SolveRefused(const std::string& what, AdmissibilityReport report)
        : Refused(what), report_(std::move(report)) {}
    const AdmissibilityReport& report() const { return report_; }

private:
    AdmissibilityReport report_;
};

/// Solves q + (1/Gamma(lambda)) int_0^t (t - tau)^{lambda-1} q(tau) d tau = f
/// through L(q) = L(f) / (1 + p^{-lambda}), which also covers negative
/// lambda where the integral is only defined by continuation in lambda.
///
/// Pipeline: transform_side, assess Q, invert Q on t_grid and on an
/// internal grid long enough for the forward residual, then the
/// transform-domain residual at settings.residual_p. Throws SolveRefused
/// when Q is not judged admissible.
HyperSolveResult solve(const TransformFunction& F_f, double lambda, const std::vector<double>& t_grid,
                       const SolveSettings& settings = {});

/// Product-integration solution of the same equation for lambda > 0 on the
/// uniform grid of f_samples, with q piecewise linear and the kernel
/// integrated exactly against each hat function.
TimeSignal oracle_volterra(const TimeSignal& f_samples, double lambda);

}  // namespace lgate
