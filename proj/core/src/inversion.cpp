#include "lgate/inversion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "axis_quadrature.hpp"

namespace lgate {
namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;
constexpr int nodes_per_panel = 15;

/// Panel width giving an average node spacing of 2 pi / (points_per_period * max|t|).
double oscillation_width_cap(const std::vector<double>& t, int points_per_period) {
    double tmax = 0.0;
    for (double x : t) tmax = std::max(tmax, std::abs(x));
    if (tmax == 0.0) return std::numeric_limits<double>::infinity();
    return nodes_per_panel * two_pi / (points_per_period * tmax);
}

}  // namespace

void InversionSettings::validate() const {
    if (!(tol > 0.0)) throw std::invalid_argument("inversion settings: tol must be positive");
    if (!(H_max > 0.0)) throw std::invalid_argument("inversion settings: H_max must be positive");
    if (points_per_period < 8) {
        throw std::invalid_argument("inversion settings: points_per_period must be >= 8");
    }
    if (refine_limit < 0 || refine_limit > 12) {
        throw std::invalid_argument("inversion settings: refine_limit must lie in [0, 12]");
    }
    if (contour_abscissa != 0.0) {
        throw std::invalid_argument("inversion settings: only the imaginary axis (abscissa 0) is supported");
    }
}

TruncationBound truncation_bound(double c_hat, double b_hat, double tol, double H_max) {
    if (!(b_hat > 1.0)) throw Refused("truncation_bound: b <= 1, tail integral not summable");
    if (!(c_hat >= 0.0) || !std::isfinite(c_hat)) {
        throw std::invalid_argument("truncation_bound: c must be non-negative and finite");
    }
    if (!(tol > 0.0)) throw std::invalid_argument("truncation_bound: tol must be positive");
    if (c_hat == 0.0) return {0.0, 0.0, false};
    auto tail = [&](double H) { return c_hat / std::numbers::pi * std::pow(H, 1.0 - b_hat) / (b_hat - 1.0); };
    const double H = std::pow(c_hat / (std::numbers::pi * tol * (b_hat - 1.0)), 1.0 / (b_hat - 1.0));
    if (!(H <= H_max)) return {H_max, tail(H_max), true};
    return {H, tol, false};
}

InversionResult invert(const TransformFunction& F, const std::vector<double>& t_grid,
                       const InversionSettings& settings, const AdmissibilityReport& report,
                       bool override_gate) {
    settings.validate();
    if (!override_gate && report.verdict != Verdict::admissible) {
        throw Refused("invert: transform is " + to_string(report.verdict) +
                      "; pass the override flag to invert anyway");
    }
    for (double t : t_grid) {
        if (!std::isfinite(t)) throw std::invalid_argument("invert: non-finite t");
    }
    if (!std::is_sorted(t_grid.begin(), t_grid.end()) ||
        std::adjacent_find(t_grid.begin(), t_grid.end()) != t_grid.end()) {
        throw std::invalid_argument("invert: t grid must be strictly increasing");
    }

    InversionResult result;
    if (report.b_hat > 1.0 && std::isfinite(report.c_hat) && report.c_hat >= 0.0) {
        result.truncation = truncation_bound(report.c_hat, report.b_hat, settings.tol, settings.H_max);
    } else if (override_gate) {
        result.truncation = {settings.H_max, std::numeric_limits<double>::infinity(), true};
    } else {
        throw Refused("invert: b_hat <= 1, the inversion integral does not converge absolutely");
    }
    const double H = result.truncation.H;
    const double width_cap = oscillation_width_cap(t_grid, settings.points_per_period);

    const std::size_t n = t_grid.size();
    TimeSignal& sig = result.signal;
    sig.t_grid = t_grid;
    sig.values.assign(n, Complex{});
    sig.err_bound.assign(n, 0.0);

    std::vector<std::size_t> pending(n);
    for (std::size_t i = 0; i < n; ++i) pending[i] = i;
    if (H == 0.0) pending.clear();  // F vanishes on the whole axis window
    for (int level = 0; !pending.empty(); ++level) {
        std::vector<double> ts;
        ts.reserve(pending.size());
        for (std::size_t i : pending) ts.push_back(t_grid[i]);
        const auto sums = detail::axis_fourier_sums(F, H, width_cap, level, ts);
        if (level == 0) result.node_count = sums.nodes;
        result.max_level = level;

        std::vector<std::size_t> still;
        for (std::size_t k = 0; k < pending.size(); ++k) {
            const std::size_t i = pending[k];
            const double diff = std::abs(sums.kronrod[k] - sums.gauss[k]) / two_pi;
            const bool accepted = diff < 0.5 * settings.tol;
            if (accepted || level >= settings.refine_limit) {
                sig.values[i] = sums.kronrod[k] / two_pi;
                sig.err_bound[i] = diff + result.truncation.achieved_tol;
                result.quadrature_error = std::max(result.quadrature_error, diff);
                if (!accepted) sig.low_confidence = true;
            } else {
                still.push_back(i);
            }
        }
        pending = std::move(still);
    }
    sig.validate_and_update_sup();
    if (result.truncation.achieved_tol > settings.tol) sig.low_confidence = true;
    return result;
}

std::vector<std::pair<double, Complex>> partial_sums_IN(const TransformFunction& F,
                                                        const std::vector<double>& N_list) {
    std::vector<std::pair<double, Complex>> table;
    const double zero[1] = {0.0};
    double prev = 0.0;
    for (double N : N_list) {
        if (!(N > prev)) throw std::invalid_argument("partial_sums_IN: N list must be positive and increasing");
        prev = N;
        // refine until the embedded estimate is negligible against the sum itself
        Complex value{};
        for (int level = 0; level <= 6; ++level) {
            const auto sums = detail::axis_fourier_sums(F, N, std::numeric_limits<double>::infinity(),
                                                        level, zero);
            value = sums.kronrod[0] / two_pi;
            const double diff = std::abs(sums.kronrod[0] - sums.gauss[0]) / two_pi;
            if (diff <= 1e-10 * std::abs(value) + 1e-15) break;
        }
        table.emplace_back(N, value);
    }
    return table;
}

double partial_sum_slope(const std::vector<std::pair<double, Complex>>& table) {
    if (table.size() < 2) return std::numeric_limits<double>::quiet_NaN();
    double mx = 0.0, my = 0.0;
    for (const auto& [N, I] : table) {
        if (std::abs(I) == 0.0) return std::numeric_limits<double>::quiet_NaN();
        mx += std::log(N);
        my += std::log(std::abs(I));
    }
    const double n = static_cast<double>(table.size());
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (const auto& [N, I] : table) {
        sxx += (std::log(N) - mx) * (std::log(N) - mx);
        sxy += (std::log(N) - mx) * (std::log(std::abs(I)) - my);
    }
    return sxy / sxx;
}

VerificationRecord verify_conclusions(const TransformFunction& F, const InversionResult& inversion,
                                      const std::vector<double>& negative_t_grid,
                                      const InversionSettings& settings,
                                      const AdmissibilityReport& report, bool override_gate,
                                      const std::vector<double>& N_list) {
    VerificationRecord rec;
    const TimeSignal& sig = inversion.signal;
    rec.sup_estimate = sig.sup_estimate;
    rec.bounded = std::isfinite(sig.sup_estimate);

    // f(0): reuse the grid value when t = 0 was inverted, otherwise invert it
    double quad_err0 = 0.0;
    auto at_zero = std::find(sig.t_grid.begin(), sig.t_grid.end(), 0.0);
    if (at_zero != sig.t_grid.end()) {
        const auto i = static_cast<std::size_t>(at_zero - sig.t_grid.begin());
        rec.f0 = std::abs(sig.values[i]);
        quad_err0 = sig.err_bound.empty() ? 0.0
                                          : std::max(0.0, sig.err_bound[i] - inversion.truncation.achieved_tol);
    } else {
        const auto zero = invert(F, {0.0}, settings, report, override_gate);
        rec.f0 = std::abs(zero.signal.values[0]);
        quad_err0 = zero.quadrature_error;
    }
    if (!std::isfinite(quad_err0)) quad_err0 = 0.0;
    rec.f0_limit = settings.tol + quad_err0;
    rec.f0_pass = rec.f0 <= rec.f0_limit;

    // causality
    if (!negative_t_grid.empty()) {
        for (double t : negative_t_grid) {
            if (!(t < 0.0)) throw std::invalid_argument("verify_conclusions: negative grid must be < 0");
        }
        auto grid = negative_t_grid;
        std::sort(grid.begin(), grid.end());
        const auto neg = invert(F, grid, settings, report, override_gate);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            rec.negative_max = std::max(rec.negative_max, std::abs(neg.signal.values[i]));
        }
        rec.negative_pass = rec.negative_max <= settings.tol + neg.quadrature_error;
    } else {
        rec.negative_pass = true;
    }

    // I_N -> 0
    rec.in_table = partial_sums_IN(F, N_list);
    rec.in_slope = partial_sum_slope(rec.in_table);
    double first = 0.0, last = 0.0, peak = 0.0;
    if (!rec.in_table.empty()) {
        first = std::abs(rec.in_table.front().second);
        last = std::abs(rec.in_table.back().second);
        for (const auto& entry : rec.in_table) peak = std::max(peak, std::abs(entry.second));
    }
    rec.in_pass = peak <= settings.tol || (last < 0.5 * first && rec.in_slope < 0.0);

    rec.all_pass = rec.bounded && rec.f0_pass && rec.negative_pass && rec.in_pass;
    return rec;
}

}  // namespace lgate
