#include "lgate/hypersingular.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "lgate/analytic.hpp"

namespace lgate {

TransformFunction transform_side(const TransformFunction& F_f, double lambda) {
    if (lambda == 0.0) throw Refused("transform_side: lambda must be nonzero, |lambda| < 2");
    if (!(std::abs(lambda) < 2.0)) {
        throw Refused("transform_side: lambda must be nonzero, |lambda| < 2 (denominator may vanish on the contour)");
    }
    TransformFunction Q;
    Q.evaluator = [F = F_f.evaluator, lambda](Complex p) {
        return F(p) / (1.0 + principal_power(p, -lambda));
    };
    Q.abscissa_a = F_f.abscissa_a;
    Q.label = "(" + (F_f.label.empty() ? std::string("F") : F_f.label) + ")/(1+p^" +
              std::to_string(-lambda) + ")";
    return Q;
}

HyperSolveResult solve(const TransformFunction& F_f, double lambda, const std::vector<double>& t_grid,
                       const SolveSettings& settings) {
    HyperSolveResult result;
    const TransformFunction Q = transform_side(F_f, lambda);
    result.Q_report = assess(Q, settings.probe);
    if (result.Q_report.verdict != Verdict::admissible) {
        throw SolveRefused("solve: Q(p) = F(p)/(1+p^-lambda) is " + to_string(result.Q_report.verdict),
                           result.Q_report);
    }
    result.q = invert(Q, t_grid, settings.inversion, result.Q_report);

    double s_min = std::numeric_limits<double>::infinity();
    for (const Complex p : settings.residual_p) s_min = std::min(s_min, p.real());
    if (!(s_min > 0.0)) throw std::invalid_argument("solve: residual samples need Re p > 0");

    // sample q far enough out that e^{-s t} hides the unsampled tail
    const double sup_guess = std::max(2.0 * result.q.signal.sup_estimate, 1e-300);
    const double tail_target = 1e-2 * settings.residual_tol;
    double horizon = std::log(sup_guess / (s_min * tail_target)) / s_min;
    horizon = std::clamp(horizon, 10.0, settings.residual_horizon_max);
    const double h = settings.residual_step;
    const auto steps = static_cast<std::size_t>(std::ceil(horizon / h));
    std::vector<double> grid(steps + 1);
    for (std::size_t k = 0; k <= steps; ++k) grid[k] = h * static_cast<double>(k);
    result.residual_horizon = grid.back();

    // q only feeds the residual here, so it is inverted to a fraction of
    // residual_tol; its pointwise error budget is carried into the residual
    InversionSettings coarse = settings.inversion;
    coarse.tol = std::max(settings.inversion.tol, 0.1 * settings.residual_tol);
    auto long_q = invert(Q, grid, coarse, result.Q_report);
    // q is bounded, so the observed sup serves as a constant tail envelope
    long_q.signal.tail_bound = TailEnvelope::algebraic(
        std::max(long_q.signal.sup_estimate, result.q.signal.sup_estimate), 0.0);

    const auto zero = std::find(t_grid.begin(), t_grid.end(), 0.0);
    if (zero != t_grid.end()) {
        result.q0_magnitude = std::abs(result.q.signal.values[static_cast<std::size_t>(zero - t_grid.begin())]);
    } else {
        result.q0_magnitude = std::abs(invert(Q, {0.0}, settings.inversion, result.Q_report).signal.values[0]);
    }
    result.residuals = operator_residual(long_q.signal, lambda, F_f, settings.residual_p);

    bool residual_ok = true;
    for (const auto& r : result.residuals) {
        if (!(std::abs(r.residual) <= settings.residual_tol)) residual_ok = false;
    }
    result.verified = residual_ok && result.q0_magnitude <= settings.inversion.tol &&
                      std::isfinite(result.q.signal.sup_estimate);
    return result;
}

TimeSignal oracle_volterra(const TimeSignal& f_samples, double lambda) {
    if (!(lambda > 0.0)) throw DomainError("oracle_volterra: lambda must be positive");
    const auto& t = f_samples.t_grid;
    const std::size_t n = t.size();
    if (n < 2) throw std::invalid_argument("oracle_volterra: need at least two samples");
    const double h = t[1] - t[0];
    if (!(h > 0.0)) throw std::invalid_argument("oracle_volterra: grid spacing must be positive");
    for (std::size_t k = 1; k < n; ++k) {
        if (std::abs((t[k] - t[k - 1]) - h) > 1e-9 * h) {
            throw std::invalid_argument("oracle_volterra: grid must be uniform");
        }
    }

    // weights of int_0^{t_m} (t_m - tau)^{lambda-1} / Gamma(lambda) phi_j(tau) d tau
    // for hat functions phi_j, in units of h^lambda / Gamma(lambda + 2)
    const double scale = std::pow(h, lambda) / gamma(lambda + 2.0);
    std::vector<double> pw(n + 1);  // k^{lambda+1}
    for (std::size_t k = 0; k <= n; ++k) pw[k] = std::pow(static_cast<double>(k), lambda + 1.0);
    auto interior = [&](std::size_t d) { return pw[d + 1] - 2.0 * pw[d] + pw[d - 1]; };

    TimeSignal q;
    q.t_grid = t;
    q.values.resize(n);
    q.values[0] = f_samples.values[0];
    for (std::size_t m = 1; m < n; ++m) {
        const double md = static_cast<double>(m);
        Complex history = (pw[m - 1] - (md - lambda - 1.0) * std::pow(md, lambda)) * q.values[0];
        for (std::size_t j = 1; j < m; ++j) history += interior(m - j) * q.values[j];
        q.values[m] = (f_samples.values[m] - scale * history) / (1.0 + scale);
    }
    q.validate_and_update_sup();
    return q;
}

}  // namespace lgate
