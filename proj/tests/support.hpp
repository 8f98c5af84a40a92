#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "lgate/catalog.hpp"
#include "lgate/types.hpp"

namespace lgate::test {

inline std::vector<double> range(double a, double b, double step) {
    std::vector<double> out;
    const int n = static_cast<int>(std::floor((b - a) / step + 1e-9));
    for (int k = 0; k <= n; ++k) out.push_back(a + k * step);
    return out;
}

// |f| envelopes for the admissible catalog pairs:
// t e^{-t} <= (2/e) e^{-t/2}, t^2 e^{-t}/2 <= (4/e^2) e^{-t/2}, |e^{-t} sin t| <= e^{-t}
inline TailEnvelope catalog_tail(const std::string& name) {
    const double e = std::exp(1.0);
    if (name == "t_exp" || name == "t_exp_cos") return TailEnvelope::exponential(2.0 / e, 0.5);
    if (name == "t2_exp") return TailEnvelope::exponential(4.0 / (e * e), 0.5);
    if (name == "exp_sin" || name == "exp") return TailEnvelope::exponential(1.0, 1.0);
    return TailEnvelope::exponential(1.0, -1.0);
}

inline TimeFunction catalog_time_function(const TransformPair& pair) {
    return TimeFunction{pair.f_closed, catalog_tail(pair.name), pair.name};
}

inline std::vector<const TransformPair*> admissible_pairs() {
    std::vector<const TransformPair*> out;
    for (const auto& p : catalog()) {
        if (p.admissible) out.push_back(&p);
    }
    return out;
}

inline TransformFunction worked_example() {
    return make_transform(
        [](Complex p) {
            return 1.0 / ((1.0 + std::exp(0.25 * std::log(p))) * (1.0 + p));
        },
        "1/((1+p^0.25)(1+p))");
}

}  // namespace lgate::test
