#pragma once

#include "lgate/types.hpp"

namespace lgate {

/// Principal power p^alpha = exp(alpha (ln|p| + i arg p)) with arg p in (-pi, pi].
/// For Re p >= 0 the argument of the result stays within |alpha| pi / 2.
/// Throws DomainError at the branch point p = 0.
Complex principal_power(Complex p, double alpha);

/// Gamma function on the real line. Throws DomainError at 0 and the
/// negative integers.
double gamma(double x);

}  // namespace lgate
