#pragma once

#include <vector>

#include "lgate/types.hpp"

namespace lgate {

/// Value of a forward transform together with its error budget.
struct TransformValue {
    Complex value;
    double error = 0.0;
    double horizon = 0.0;  // integration cut-off T
};

/// F(p) = int_0^inf e^{-pt} f(t) dt by adaptive quadrature on [0, T], with
/// T the first point where the declared tail envelope integrates to at
/// most tol/2. Throws Refused when f has no tail envelope or the envelope
/// is not absolutely integrable against e^{-pt}; DomainError for Re p < 0.
std::vector<TransformValue> forward_transform(const TimeFunction& f, const std::vector<Complex>& p_points,
                                              double tol);

/// Exact transform of the piecewise-linear interpolant of a sampled signal,
/// plus the tail beyond the last sample bounded through signal.tail_bound.
/// The error budget folds in the interpolation error (estimated from second
/// differences), the samples' own err_bound and the tail bound.
TransformValue transform_signal(const TimeSignal& signal, Complex p);

/// Value part of transform_signal alone: the exact transform of the
/// interpolant, zero beyond the last sample.
Complex transform_interpolant(const TimeSignal& signal, Complex p);

struct ResidualSample {
    Complex p;
    Complex residual;     // L(q)(p) (1 + p^{-lambda}) - F_f(p)
    double error = 0.0;   // error budget of L(q)(p) carried through the factor
};

/// Transform-domain residual of q + I^lambda q = f at each sample point.
/// Requires 0 < |lambda| < 2 and Re p > 0.
std::vector<ResidualSample> operator_residual(const TimeSignal& q, double lambda,
                                              const TransformFunction& F_f,
                                              const std::vector<Complex>& p_samples);

std::vector<ResidualSample> operator_residual(const TimeFunction& q, double lambda,
                                              const TransformFunction& F_f,
                                              const std::vector<Complex>& p_samples, double tol);

}  // namespace lgate
