#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace lgate {

/// A point of the complex transform plane, p = s + i*eta.
using Complex = std::complex<double>;

/// Raised when an input lies outside the domain of an operation
/// (branch point of p^alpha, pole of the gamma function, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Raised when an operation declines to run on inputs that do not meet
/// its preconditions (non-summable tail, inadmissible transform, ...).
class Refused : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Power-law envelope |F(p)| <= c (1+|p|)^(-b) for large |p|.
struct DecayHint {
    double c = 1.0;
    double b = 1.0;
};

/// Analytic function on Re p >= 0 together with whatever is known about it.
///
/// The evaluator must be deterministic and defined for every Re p >= 0 with
/// p != 0 (p = 0 is allowed to be a branch point).
struct TransformFunction {
    std::function<Complex(Complex)> evaluator;
    double abscissa_a = 0.0;
    std::optional<double> growth_C;
    std::optional<DecayHint> decay_hint;
    std::string label;

    Complex operator()(Complex p) const { return evaluator(p); }
};

TransformFunction make_transform(std::function<Complex(Complex)> fn, std::string label = {});

/// Declared envelope of |f(t)| for large t, used for truncation accounting.
struct TailEnvelope {
    enum class Kind { exponential, algebraic };
    Kind kind = Kind::exponential;
    double M = 0.0;     // amplitude
    double rate = 0.0;  // gamma for M e^{-gamma t}, rho for M t^{-rho}

    static TailEnvelope exponential(double M, double gamma) { return {Kind::exponential, M, gamma}; }
    static TailEnvelope algebraic(double M, double rho) { return {Kind::algebraic, M, rho}; }

    double operator()(double t) const;

    /// Upper bound of int_T^inf envelope(t) e^{-s t} dt for s = Re p >= 0.
    /// Returns +inf when the integral does not converge absolutely.
    double tail_integral(double T, double s) const;
};

/// Time-domain function together with its declared tail behaviour.
struct TimeFunction {
    std::function<Complex(double)> evaluator;
    std::optional<TailEnvelope> tail;
    std::string label;

    Complex operator()(double t) const { return evaluator(t); }
};

/// Sampled causal signal f(t) on a strictly increasing grid.
struct TimeSignal {
    std::vector<double> t_grid;
    std::vector<Complex> values;
    /// Per-sample error budget (quadrature plus truncation); empty if unknown.
    std::vector<double> err_bound;
    double sup_estimate = 0.0;
    std::optional<TailEnvelope> tail_bound;
    bool low_confidence = false;

    std::size_t size() const { return t_grid.size(); }

    /// Throws std::invalid_argument when the grid is not strictly increasing,
    /// values are non-finite or sizes disagree. Recomputes sup_estimate.
    void validate_and_update_sup();

    /// Linear interpolation; zero for t < t_grid.front(), zero beyond the
    /// last sample (the tail is accounted separately through tail_bound).
    Complex interpolate(double t) const;
};

}  // namespace lgate
