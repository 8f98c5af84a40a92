#pragma once

#include <string_view>
#include <vector>

#include "lgate/types.hpp"

namespace lgate {

/// Closed-form reference pair f(t) <-> F(p) used as an oracle.
struct TransformPair {
    std::string name;
    std::string f_text;  // human-readable
    std::string F_text;  // parses with the CLI expression grammar
    std::function<Complex(double)> f_closed;
    TransformFunction F_closed;
    double b_true = 0.0;
    double sup_true = 0.0;  // +inf for unbounded f
    bool admissible = false;
    std::string note;  // why the pair is (in)admissible
};

/// Compiled-in catalog of reference pairs. Contains at least three
/// admissible pairs (b > 1, f(0) = 0) and two inadmissible ones.
const std::vector<TransformPair>& catalog();

/// Throws std::out_of_range for an unknown name.
const TransformPair& catalog_lookup(std::string_view name);

}  // namespace lgate
