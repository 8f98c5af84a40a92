#include "lgate/catalog.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace lgate {
namespace {

TransformPair make_pair(std::string name, std::string f_text, std::string F_text,
                        std::function<Complex(double)> f, std::function<Complex(Complex)> F,
                        double b, double sup, bool admissible, std::string note) {
    TransformPair pair;
    pair.name = std::move(name);
    pair.f_text = std::move(f_text);
    pair.F_text = std::move(F_text);
    pair.f_closed = std::move(f);
    pair.F_closed = make_transform(std::move(F), pair.F_text);
    pair.b_true = b;
    pair.sup_true = sup;
    pair.admissible = admissible;
    pair.note = std::move(note);
    if (admissible) pair.F_closed.decay_hint = DecayHint{1.0, b};
    return pair;
}

std::vector<TransformPair> build_catalog() {
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<TransformPair> pairs;

    pairs.push_back(make_pair(
        "t_exp", "t*exp(-t)", "1/(p+1)^2",
        [](double t) { return Complex{t >= 0.0 ? t * std::exp(-t) : 0.0, 0.0}; },
        [](Complex p) { return 1.0 / ((p + 1.0) * (p + 1.0)); },
        2.0, std::exp(-1.0), true, "b = 2, f(0) = 0"));

    // sup of t^2 e^{-t} / 2 is attained at t = 2
    pairs.push_back(make_pair(
        "t2_exp", "t^2*exp(-t)/2", "1/(p+1)^3",
        [](double t) { return Complex{t >= 0.0 ? 0.5 * t * t * std::exp(-t) : 0.0, 0.0}; },
        [](Complex p) { return 1.0 / ((p + 1.0) * (p + 1.0) * (p + 1.0)); },
        3.0, 2.0 * std::exp(-2.0), true, "b = 3, f(0) = 0"));

    // sup of t e^{-t} cos t sits at the root of 1 - t = t tan t, t = 0.59589983197327
    pairs.push_back(make_pair(
        "t_exp_cos", "t*exp(-t)*cos(t)", "((p+1)^2-1)/((p+1)^2+1)^2",
        [](double t) { return Complex{t >= 0.0 ? t * std::exp(-t) * std::cos(t) : 0.0, 0.0}; },
        [](Complex p) {
            const Complex q = (p + 1.0) * (p + 1.0);
            return (q - 1.0) / ((q + 1.0) * (q + 1.0));
        },
        2.0, 0.27178201874670077, true, "b = 2, f(0) = 0"));

    pairs.push_back(make_pair(
        "exp_sin", "exp(-t)*sin(t)", "1/((p+1)^2+1)",
        [](double t) { return Complex{t >= 0.0 ? std::exp(-t) * std::sin(t) : 0.0, 0.0}; },
        [](Complex p) { return 1.0 / ((p + 1.0) * (p + 1.0) + 1.0); },
        // maximum at t = pi/4
        2.0, std::exp(-std::numbers::pi / 4) * std::sin(std::numbers::pi / 4), true,
        "b = 2, f(0) = 0"));

    pairs.push_back(make_pair(
        "exp", "exp(-t)", "1/(p+1)",
        [](double t) { return Complex{t >= 0.0 ? std::exp(-t) : 0.0, 0.0}; },
        [](Complex p) { return 1.0 / (p + 1.0); },
        1.0, 1.0, false, "f(0) = 1 and b = 1"));

    pairs.push_back(make_pair(
        "pole", "exp(t)", "1/(p-1)",
        [](double t) { return Complex{t >= 0.0 ? std::exp(t) : 0.0, 0.0}; },
        [](Complex p) { return 1.0 / (p - 1.0); },
        1.0, inf, false, "pole at p = 1 inside Re p > 0"));

    return pairs;
}

}  // namespace

const std::vector<TransformPair>& catalog() {
    static const std::vector<TransformPair> pairs = build_catalog();
    return pairs;
}

const TransformPair& catalog_lookup(std::string_view name) {
    for (const auto& pair : catalog()) {
        if (pair.name == name) return pair;
    }
    throw std::out_of_range("catalog: no pair named '" + std::string(name) + "'");
}

}  // namespace lgate
