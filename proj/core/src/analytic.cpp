#include "lgate/analytic.hpp"

#include <cmath>
#include <numbers>

namespace lgate {

Complex principal_power(Complex p, double alpha) {
    if (p == Complex{0.0, 0.0}) {
        throw DomainError("principal_power: p = 0 is a branch point");
    }
    double arg = std::arg(p);
    // std::arg returns -pi for a negative real with a -0.0 imaginary part
    if (arg <= -std::numbers::pi) arg = std::numbers::pi;
    const double log_mod = std::log(std::abs(p));
    return std::exp(Complex{alpha * log_mod, alpha * arg});
}

double gamma(double x) {
    if (!std::isfinite(x)) throw DomainError("gamma: non-finite argument");
    if (x <= 0.0 && x == std::floor(x)) {
        throw DomainError("gamma: pole at non-positive integer");
    }
    return std::tgamma(x);
}

}  // namespace lgate
