#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lgate/admissibility.hpp"
#include "lgate/catalog.hpp"
#include "support.hpp"

using namespace lgate;

namespace {

TransformFunction double_pole() {
    return make_transform([](Complex p) { return 1.0 / ((p + 1.0) * (p + 1.0)); }, "1/(p+1)^2");
}
TransformFunction simple_pole() {
    return make_transform([](Complex p) { return 1.0 / (p + 1.0); }, "1/(p+1)");
}
TransformFunction right_pole() {
    return make_transform([](Complex p) { return 1.0 / (p - 1.0); }, "1/(p-1)");
}
TransformFunction constant_one() {
    return make_transform([](Complex) { return Complex{1.0, 0.0}; }, "1");
}

bool has(const std::vector<std::string>& v, const char* id) {
    return std::find(v.begin(), v.end(), id) != v.end();
}

}  // namespace

TEST_SUITE("admissibility") {

TEST_CASE("decay exponent examples") {
    const ProbeSettings s;
    CHECK(estimate_decay(double_pole(), s).b_hat == doctest::Approx(2.0).epsilon(0.025));
    CHECK(estimate_decay(test::worked_example(), s).b_hat == doctest::Approx(1.25).epsilon(0.04));
    const DecayFit one = estimate_decay(simple_pole(), s);
    CHECK(one.b_hat == doctest::Approx(1.0).epsilon(0.01));
    CHECK(one.b_hat <= 1.0 + s.b_fail_slack);
}

TEST_CASE("decay envelope bounds the axis samples") {
    const ProbeSettings s;
    const DecayFit fit = estimate_decay(test::worked_example(), s);
    for (double eta = s.eta_min; eta <= s.eta_max; eta *= 1.07) {
        CHECK(std::abs(test::worked_example()(Complex{0.0, eta})) <= fit.c_hat * std::pow(eta, -fit.b_hat) * (1 + 1e-3));
    }
}

TEST_CASE("decay fit drops zero samples and refuses mostly-zero input") {
    ProbeSettings s;
    auto sparse = make_transform([](Complex p) {
        return std::abs(p.imag()) < 1000.0 ? Complex{0.0, 0.0} : 1.0 / (p * p);
    });
    CHECK_THROWS_AS(estimate_decay(sparse, s), DomainError);

    auto few = make_transform([](Complex p) {
        return std::abs(p.imag()) < 20.0 ? Complex{0.0, 0.0} : 1.0 / (p * p);
    });
    const DecayFit fit = estimate_decay(few, s);
    CHECK(fit.dropped > 0);
    CHECK(fit.b_hat == doctest::Approx(2.0).epsilon(1e-9));

    const DecayFit zero = estimate_decay(make_transform([](Complex) { return Complex{}; }), s);
    CHECK(std::isinf(zero.b_hat));
    CHECK(zero.c_hat == 0.0);
}

TEST_CASE("semicircle profile examples") {
    ProbeSettings s;
    const auto first = check_semicircle_decay(double_pole(), s);
    CHECK(first.pass);
    CHECK(first.profile.front().first == 10.0);
    CHECK(first.profile.front().second <= 1.0 / 81.0);

    s.radii = {10.0, 100.0, 1000.0};
    const auto prof = check_semicircle_decay(double_pole(), s).profile;
    REQUIRE(prof.size() == 3);
    CHECK(prof[1].second < prof[0].second);
    CHECK(prof[2].second < prof[1].second);

    const auto flat = check_semicircle_decay(constant_one(), ProbeSettings{});
    CHECK_FALSE(flat.pass);
    CHECK(flat.conclusive);
}

TEST_CASE("growth bound examples") {
    const ProbeSettings s;
    const auto good = check_growth_bound(double_pole(), s.s_grid, s.growth_eta_grid);
    CHECK(good.pass);
    CHECK(good.C_hat == doctest::Approx(0.25).epsilon(0.01));

    CHECK_FALSE(check_growth_bound(right_pole(), s.s_grid, s.growth_eta_grid).pass);
    CHECK_FALSE(check_growth_bound(constant_one(), s.s_grid, s.growth_eta_grid).pass);
}

TEST_CASE("cauchy loops") {
    const ProbeSettings s;
    for (const auto& loop : check_analyticity_loops(double_pole(), s)) {
        CHECK(loop.reliable);
        CHECK(loop.residual <= 1e-8);
        CHECK(loop.rect.s1 >= s.loop_region.s1);
        CHECK(loop.rect.s2 <= s.loop_region.s2);
    }

    const auto around = loop_integral(right_pole(), Rect{0.5, 1.5, -0.5, 0.5});
    CHECK(std::abs(around.integral - Complex{0.0, 2.0 * std::numbers::pi}) < 1e-8);

    const auto flat = loop_integral(double_pole(), Rect{1.0, 1.0, -1.0, 1.0});
    CHECK(flat.residual == 0.0);
    CHECK(std::abs(flat.integral) == 0.0);
}

TEST_CASE("loop rectangles depend on the seed only") {
    ProbeSettings a, b;
    b.seed = 43;
    const auto la = check_analyticity_loops(double_pole(), a);
    const auto la2 = check_analyticity_loops(double_pole(), a);
    const auto lb = check_analyticity_loops(double_pole(), b);
    REQUIRE(la.size() == static_cast<std::size_t>(a.loop_count));
    bool differs = false;
    for (std::size_t i = 0; i < la.size(); ++i) {
        CHECK(la[i].rect.s1 == la2[i].rect.s1);
        CHECK(la[i].rect.eta2 == la2[i].rect.eta2);
        differs = differs || la[i].rect.s1 != lb[i].rect.s1;
    }
    CHECK(differs);
    // loop 0 always covers the whole region
    CHECK(la[0].rect.s1 == a.loop_region.s1);
    CHECK(la[0].rect.eta2 == a.loop_region.eta2);
}

TEST_CASE("assess examples") {
    const ProbeSettings s;
    const auto good = assess(double_pole(), s);
    CHECK(good.verdict == Verdict::admissible);
    CHECK(good.failed_conditions.empty());
    CHECK(good.b_hat >= 1.0 + s.b_margin);
    for (double r : good.loop_residuals) CHECK(r <= s.loop_threshold);

    const auto slow = assess(simple_pole(), s);
    CHECK(slow.verdict == Verdict::inadmissible);
    CHECK(has(slow.failed_conditions, condition::decay));

    const auto pole = assess(right_pole(), s);
    CHECK(pole.verdict == Verdict::inadmissible);
    CHECK(has(pole.failed_conditions, condition::analyticity));

    const auto flat = assess(constant_one(), s);
    CHECK(flat.verdict == Verdict::inadmissible);
}

TEST_CASE("exponent near the boundary is inconclusive") {
    // |F(i eta)| ~ eta^{-1.05}: above 1 + slack, below 1 + margin
    auto edge = make_transform([](Complex p) { return std::exp(-1.05 * std::log(p + 1.0)); });
    const auto r = assess(edge, ProbeSettings{});
    CHECK(r.verdict == Verdict::inconclusive);
    CHECK(has(r.inconclusive_conditions, condition::decay));
}

TEST_CASE("evaluation failures are reported, not thrown") {
    auto broken = make_transform([](Complex p) -> Complex {
        if (std::abs(p) > 50.0) throw DomainError("out of range");
        return 1.0 / ((p + 1.0) * (p + 1.0));
    });
    AdmissibilityReport r;
    CHECK_NOTHROW(r = assess(broken, ProbeSettings{}));
    CHECK(r.verdict == Verdict::inconclusive);
    CHECK_FALSE(r.diagnostics.empty());
}

TEST_CASE("zero transform is admissible") {
    const auto r = assess(make_transform([](Complex) { return Complex{}; }), ProbeSettings{});
    CHECK(r.verdict == Verdict::admissible);
}

TEST_CASE("scale invariance of the exponent") {
    const ProbeSettings s;
    const double base = estimate_decay(test::worked_example(), s).b_hat;
    for (double k : {1e-3, 0.5, 7.0, 1e4}) {
        CAPTURE(k);
        auto scaled = make_transform([k](Complex p) { return k * test::worked_example()(p); });
        CHECK(std::abs(estimate_decay(scaled, s).b_hat - base) <= 1e-9);
        CHECK(assess(scaled, s).verdict == assess(test::worked_example(), s).verdict);
    }
}

TEST_CASE("determinism") {
    const ProbeSettings s;
    const auto a = assess(test::worked_example(), s);
    const auto b = assess(test::worked_example(), s);
    CHECK(a.b_hat == b.b_hat);
    CHECK(a.c_hat == b.c_hat);
    CHECK(a.fit_residual == b.fit_residual);
    CHECK(a.semicircle_max == b.semicircle_max);
    CHECK(a.growth_C_hat == b.growth_C_hat);
    CHECK(a.loop_residuals == b.loop_residuals);
    REQUIRE(a.loops.size() == b.loops.size());
    for (std::size_t i = 0; i < a.loops.size(); ++i) CHECK(a.loops[i].integral == b.loops[i].integral);
    CHECK(a.verdict == b.verdict);
}

TEST_CASE("monotone consistency in eta_max") {
    ProbeSettings s;
    double prev_gap = -1.0;
    for (double eta_max : {1e3, 1e4, 1e5, 1e6}) {
        s.eta_max = eta_max;
        const DecayFit fit = estimate_decay(double_pole(), s);
        const double gap = std::abs(fit.b_hat - 2.0);
        if (prev_gap >= 0.0) CHECK(gap <= prev_gap + fit.fit_residual);
        prev_gap = gap;
    }
}

TEST_CASE("catalog soundness") {
    for (const auto& pair : catalog()) {
        CAPTURE(pair.name);
        const auto r = assess(pair.F_closed, ProbeSettings{});
        CHECK(r.verdict == (pair.admissible ? Verdict::admissible : Verdict::inadmissible));
    }
}

TEST_CASE("settings validation") {
    ProbeSettings s;
    s.eta_min = 100.0;
    s.eta_max = 10.0;
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
    s = ProbeSettings{};
    s.loop_region.s1 = 0.0;
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
    s = ProbeSettings{};
    s.n_samples = 1;
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
    s = ProbeSettings{};
    s.radii = {100.0, 10.0};
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
}

}  // TEST_SUITE
