#include "lgate/types.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace lgate {

TransformFunction make_transform(std::function<Complex(Complex)> fn, std::string label) {
    TransformFunction F;
    F.evaluator = std::move(fn);
    F.label = std::move(label);
    return F;
}

double TailEnvelope::operator()(double t) const {
    if (kind == Kind::exponential) return M * std::exp(-rate * t);
    return t > 0.0 ? M * std::pow(t, -rate) : std::numeric_limits<double>::infinity();
}

double TailEnvelope::tail_integral(double T, double s) const {
    constexpr double inf = std::numeric_limits<double>::infinity();
    if (M == 0.0) return 0.0;
    if (kind == Kind::exponential) {
        const double k = rate + s;
        return k > 0.0 ? M * std::exp(-k * T) / k : inf;
    }
    if (T <= 0.0) return inf;
    double bound = inf;
    if (s > 0.0 && rate >= 0.0) bound = M * std::pow(T, -rate) * std::exp(-s * T) / s;
    if (rate > 1.0) bound = std::min(bound, M * std::pow(T, 1.0 - rate) / (rate - 1.0));
    return bound;
}

void TimeSignal::validate_and_update_sup() {
    if (t_grid.size() != values.size()) {
        throw std::invalid_argument("TimeSignal: grid and values differ in length");
    }
    if (!err_bound.empty() && err_bound.size() != values.size()) {
        throw std::invalid_argument("TimeSignal: err_bound length mismatch");
    }
    double sup = 0.0;
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        if (!std::isfinite(t_grid[i]) || !std::isfinite(values[i].real()) ||
            !std::isfinite(values[i].imag())) {
            throw std::invalid_argument("TimeSignal: non-finite sample");
        }
        if (i > 0 && !(t_grid[i] > t_grid[i - 1])) {
            throw std::invalid_argument("TimeSignal: grid not strictly increasing");
        }
        sup = std::max(sup, std::abs(values[i]));
    }
    sup_estimate = sup;
}

Complex TimeSignal::interpolate(double t) const {
    if (t_grid.empty() || t < t_grid.front() || t > t_grid.back()) return {0.0, 0.0};
    auto it = std::upper_bound(t_grid.begin(), t_grid.end(), t);
    if (it == t_grid.end()) return values.back();
    const std::size_t hi = static_cast<std::size_t>(it - t_grid.begin());
    const std::size_t lo = hi - 1;
    const double w = (t - t_grid[lo]) / (t_grid[hi] - t_grid[lo]);
    return values[lo] * (1.0 - w) + values[hi] * w;
}

}  // namespace lgate
