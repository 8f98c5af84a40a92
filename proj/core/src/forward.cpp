#include "lgate/forward.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "lgate/analytic.hpp"
#include "lgate/quadrature.hpp"

namespace lgate {
namespace {

/// Smallest horizon (to within 1 %) where the envelope tail drops below target.
double tail_horizon(const TailEnvelope& tail, double s, double target) {
    if (!(tail.tail_integral(1.0, s) < std::numeric_limits<double>::infinity())) {
        throw Refused("forward_transform: tail envelope is not absolutely integrable at Re p = " +
                      std::to_string(s) + "; the transform integral does not converge absolutely");
    }
    double hi = 1.0;
    while (tail.tail_integral(hi, s) > target) {
        hi *= 2.0;
        if (hi > 1e12) throw Refused("forward_transform: tail envelope decays too slowly for tol");
    }
    double lo = 0.0;
    while (hi - lo > 0.01 * hi) {
        const double mid = 0.5 * (lo + hi);
        (tail.tail_integral(mid, s) > target ? lo : hi) = mid;
    }
    return hi;
}

/// phi1(z) = (1 - e^{-z}) / z and phi2(z) = (1 - e^{-z}(1 + z)) / z^2.
std::pair<Complex, Complex> phi12(Complex z) {
    if (std::abs(z) < 0.1) {
        // Taylor series: phi1 = sum (-z)^n / (n+1)!, phi2 = sum (-z)^n / (n! (n+2))
        Complex p1{}, p2{}, pw{1.0, 0.0};
        double fact = 1.0;
        for (int n = 0; n < 12; ++n) {
            if (n > 0) fact *= n;
            p1 += pw / (fact * (n + 1));
            p2 += pw / (fact * (n + 2));
            pw *= -z;
        }
        return {p1, p2};
    }
    const Complex e = std::exp(-z);
    return {(1.0 - e) / z, (1.0 - e * (1.0 + z)) / (z * z)};
}

/// e^{-p t_k} along a grid; on a uniform grid advanced by one complex
/// multiply per knot and reseeded every 64 knots to cap rounding drift.
class KnotExp {
public:
    KnotExp(const std::vector<double>& t, Complex p) : t_(t), p_(p) {
        const std::size_t n = t.size();
        step_ = (t.back() - t.front()) / static_cast<double>(n - 1);
        uniform_ = step_ > 0.0;
        for (std::size_t k = 1; k < n && uniform_; ++k) {
            uniform_ = std::abs((t[k] - t[k - 1]) - step_) <= 1e-9 * step_;
        }
        if (uniform_) ratio_ = std::exp(-p * step_);
    }

    bool uniform() const { return uniform_; }
    double step() const { return step_; }

    class Cursor {
    public:
        Cursor(const KnotExp& owner) : o_(owner) { seed(); }
        Complex value() const { return value_; }
        void next() {
            ++k_;
            if (k_ >= o_.t_.size()) return;
            if (!o_.uniform_ || k_ % 64 == 0) {
                seed();
            } else {
                value_ *= o_.ratio_;
            }
        }

    private:
        void seed() { value_ = std::exp(-o_.p_ * o_.t_[k_]); }
        const KnotExp& o_;
        std::size_t k_ = 0;
        Complex value_;
    };
    Cursor begin() const { return Cursor(*this); }

private:
    const std::vector<double>& t_;
    Complex p_;
    double step_ = 0.0;
    bool uniform_ = false;
    Complex ratio_;
};

void check_lambda(double lambda) {
    if (!(lambda != 0.0 && std::abs(lambda) < 2.0)) {
        throw DomainError("operator_residual: lambda must be nonzero with |lambda| < 2");
    }
}

}  // namespace

std::vector<TransformValue> forward_transform(const TimeFunction& f, const std::vector<Complex>& p_points,
                                              double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("forward_transform: tol must be positive");
    if (!f.tail) throw Refused("forward_transform: a tail envelope must be declared");
    std::vector<TransformValue> out;
    out.reserve(p_points.size());
    for (const Complex p : p_points) {
        if (p.real() < 0.0) throw DomainError("forward_transform: Re p must be >= 0");
        const double T = tail_horizon(*f.tail, p.real(), 0.5 * tol);
        // resolve e^{-i eta t} with a few panels per period before adapting
        const double periods = T * std::abs(p.imag()) / (2.0 * std::numbers::pi);
        const int panels = std::clamp(static_cast<int>(std::ceil(2.0 * periods + T)), 1, 200000);
        const double width = T / panels;
        auto g = [&](double t) { return std::exp(-p * t) * f(t); };
        TransformValue tv;
        tv.horizon = T;
        double err = 0.0;
        for (int k = 0; k < panels; ++k) {
            const auto r = quad::integrate(g, k * width, (k + 1) * width, 0.5 * tol / panels, 1e-13);
            tv.value += r.value;
            err += r.error;
        }
        tv.error = err + f.tail->tail_integral(T, p.real());
        out.push_back(tv);
    }
    return out;
}

Complex transform_interpolant(const TimeSignal& signal, Complex p) {
    const auto& t = signal.t_grid;
    const auto& v = signal.values;
    if (t.size() < 2) throw std::invalid_argument("transform_signal: need at least two samples");
    if (p.real() < 0.0) throw DomainError("transform_signal: Re p must be >= 0");

    Complex sum{0.0, 0.0};
    const KnotExp knot(t, p);
    if (knot.uniform()) {
        // every segment shares phi1, phi2
        const double h = knot.step();
        const auto [p1, p2] = phi12(p * h);
        KnotExp::Cursor e = knot.begin();
        for (std::size_t k = 0; k + 1 < t.size(); ++k, e.next()) {
            sum += e.value() * h * (v[k] * p1 + (v[k + 1] - v[k]) * p2);
        }
    } else {
        for (std::size_t k = 0; k + 1 < t.size(); ++k) {
            const double h = t[k + 1] - t[k];
            const auto [p1, p2] = phi12(p * h);
            sum += std::exp(-p * t[k]) * h * (v[k] * p1 + (v[k + 1] - v[k]) * p2);
        }
    }
    return sum;
}

TransformValue transform_signal(const TimeSignal& signal, Complex p) {
    TransformValue tv;
    tv.value = transform_interpolant(signal, p);
    const auto& t = signal.t_grid;
    const auto& v = signal.values;
    const double s = p.real();

    const KnotExp decay(t, Complex{s, 0.0});
    // interpolation error |f - f_lin| <= h^2/8 |f''| with f'' from second differences
    double interp = 0.0;
    {
        KnotExp::Cursor e = decay.begin();
        for (std::size_t k = 1; k + 1 < t.size(); ++k, e.next()) {
            const double h0 = t[k] - t[k - 1], h1 = t[k + 1] - t[k];
            const Complex d2 = 2.0 * ((v[k + 1] - v[k]) / h1 - (v[k] - v[k - 1]) / h0) / (h0 + h1);
            const double h = std::max(h0, h1);
            interp += h * h / 8.0 * std::abs(d2) * h * e.value().real();
        }
    }
    // pointwise error budget of the samples themselves
    double sample_err = 0.0;
    if (!signal.err_bound.empty()) {
        KnotExp::Cursor e = decay.begin();
        for (std::size_t k = 0; k + 1 < t.size(); ++k, e.next()) {
            const double h = t[k + 1] - t[k];
            sample_err += std::max(signal.err_bound[k], signal.err_bound[k + 1]) * h * e.value().real();
        }
    }
    tv.horizon = t.back();
    double tail = 0.0;
    if (signal.tail_bound) {
        tail = signal.tail_bound->tail_integral(t.back(), s);
    } else if (s > 0.0) {
        tail = signal.sup_estimate * std::exp(-s * t.back()) / s;
    } else {
        tail = std::numeric_limits<double>::infinity();
    }
    tv.error = interp + sample_err + tail;
    return tv;
}

std::vector<ResidualSample> operator_residual(const TimeSignal& q, double lambda,
                                              const TransformFunction& F_f,
                                              const std::vector<Complex>& p_samples) {
    check_lambda(lambda);
    std::vector<ResidualSample> out;
    for (const Complex p : p_samples) {
        if (!(p.real() > 0.0)) throw DomainError("operator_residual: Re p must be > 0");
        const auto tv = transform_signal(q, p);
        const Complex factor = 1.0 + principal_power(p, -lambda);
        out.push_back({p, tv.value * factor - F_f(p), tv.error * std::abs(factor)});
    }
    return out;
}

std::vector<ResidualSample> operator_residual(const TimeFunction& q, double lambda,
                                              const TransformFunction& F_f,
                                              const std::vector<Complex>& p_samples, double tol) {
    check_lambda(lambda);
    for (const Complex p : p_samples) {
        if (!(p.real() > 0.0)) throw DomainError("operator_residual: Re p must be > 0");
    }
    const auto values = forward_transform(q, p_samples, tol);
    std::vector<ResidualSample> out;
    for (std::size_t i = 0; i < p_samples.size(); ++i) {
        const Complex p = p_samples[i];
        const Complex factor = 1.0 + principal_power(p, -lambda);
        out.push_back({p, values[i].value * factor - F_f(p), values[i].error * std::abs(factor)});
    }
    return out;
}

}  // namespace lgate
