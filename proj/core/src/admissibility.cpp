#include "lgate/admissibility.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

#include "lgate/quadrature.hpp"

namespace lgate {
namespace {

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

std::vector<double> geometric_grid(double lo, double hi, int n) {
    std::vector<double> grid(static_cast<std::size_t>(n));
    const double step = std::log(hi / lo) / (n - 1);
    for (int k = 0; k < n; ++k) grid[static_cast<std::size_t>(k)] = lo * std::exp(step * k);
    grid.back() = hi;
    return grid;
}

}  // namespace

std::vector<double> ProbeSettings::default_s_grid() {
    // four points per decade on [1e-3, 1e3]; k = 12 lands exactly on s = 1
    std::vector<double> grid;
    for (int k = 0; k <= 24; ++k) grid.push_back(std::pow(10.0, -3.0 + k / 4.0));
    return grid;
}

std::vector<double> ProbeSettings::default_growth_eta_grid() {
    return {-1000.0, -100.0, -10.0, -5.0, -2.0, -1.0, -0.5, 0.0,
            0.5,     1.0,    2.0,   5.0,  10.0, 100.0, 1000.0};
}

void ProbeSettings::validate() const {
    if (!(eta_min > 0.0) || !(eta_min < eta_max)) {
        throw std::invalid_argument("probe settings: need 0 < eta_min < eta_max");
    }
    if (n_samples < 2 || phi_count < 2 || loop_count < 2) {
        throw std::invalid_argument("probe settings: all counts must be >= 2");
    }
    if (!(loop_region.s1 > 0.0) || !(loop_region.s1 < loop_region.s2) ||
        !(loop_region.eta1 < loop_region.eta2)) {
        throw std::invalid_argument("probe settings: loop region must satisfy 0 < s1 < s2, eta1 < eta2");
    }
    if (radii.size() < 2 || !std::is_sorted(radii.begin(), radii.end()) || radii.front() <= 0.0 ||
        std::adjacent_find(radii.begin(), radii.end()) != radii.end()) {
        throw std::invalid_argument("probe settings: radii must be positive and increasing");
    }
    if (s_grid.size() < 2 || !std::is_sorted(s_grid.begin(), s_grid.end()) || s_grid.front() <= 0.0) {
        throw std::invalid_argument("probe settings: s_grid must be positive and increasing");
    }
    if (growth_eta_grid.empty()) throw std::invalid_argument("probe settings: empty eta grid");
    if (!(b_margin >= 0.0) || !(loop_threshold > 0.0) || !(decay_fit_max_residual > 0.0)) {
        throw std::invalid_argument("probe settings: thresholds must be positive");
    }
}

DecayFit estimate_decay(const TransformFunction& F, const ProbeSettings& settings) {
    const auto grid = geometric_grid(settings.eta_min, settings.eta_max, settings.n_samples);
    std::vector<double> xs, ys;
    xs.reserve(2 * grid.size());
    ys.reserve(2 * grid.size());
    int dropped = 0;
    for (double sign : {1.0, -1.0}) {
        for (double eta : grid) {
            const Complex value = F(Complex{0.0, sign * eta});
            const double mod = std::abs(value);
            if (!std::isfinite(mod)) {
                throw DomainError("estimate_decay: F is not finite at i*" + std::to_string(sign * eta));
            }
            if (mod == 0.0) {
                ++dropped;
                continue;
            }
            xs.push_back(std::log(eta));
            ys.push_back(std::log(mod));
        }
    }
    const int total = 2 * settings.n_samples;
    if (dropped == total) {
        // identically zero on the window: every envelope holds, with c = 0
        DecayFit zero;
        zero.b_hat = std::numeric_limits<double>::infinity();
        zero.dropped = dropped;
        return zero;
    }
    if (2 * dropped > total || xs.size() < 2) {
        throw DomainError("estimate_decay: F vanishes at more than half of the axis samples");
    }

    const double n = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    const double slope = sxy / sxx;
    const double intercept = my - slope * mx;
    double ss = 0.0, above = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double r = ys[i] - (intercept + slope * xs[i]);
        ss += r * r;
        above = std::max(above, r);
    }

    DecayFit fit;
    fit.b_hat = -slope;
    fit.c_hat = std::exp(intercept + above);
    fit.fit_residual = std::sqrt(ss / n);
    fit.used = static_cast<int>(xs.size());
    fit.dropped = dropped;
    return fit;
}

SemicircleCheck check_semicircle_decay(const TransformFunction& F, const ProbeSettings& settings) {
    SemicircleCheck check;
    const int m = settings.phi_count;
    for (double R : settings.radii) {
        double peak = 0.0;
        bool ok = true;
        for (int k = 0; k < m; ++k) {
            const double phi = -std::numbers::pi / 2 + std::numbers::pi * k / (m - 1);
            try {
                const double mod = std::abs(F(std::polar(R, phi)));
                if (!std::isfinite(mod)) {
                    ok = false;
                    break;
                }
                peak = std::max(peak, mod);
            } catch (const std::exception&) {
                ok = false;
                break;
            }
        }
        check.profile.emplace_back(R, ok ? peak : std::numeric_limits<double>::quiet_NaN());
        check.reliable.push_back(ok);
    }

    bool monotone = true;
    const auto& prof = check.profile;
    std::optional<double> first, last;
    std::optional<double> prev;
    for (std::size_t i = 0; i < prof.size(); ++i) {
        if (!check.reliable[i]) {
            check.conclusive = false;
            continue;
        }
        if (prev && prof[i].second > 1.05 * *prev) monotone = false;
        prev = prof[i].second;
        if (!first) first = prof[i].second;
        last = prof[i].second;
    }
    // F == 0 on every semicircle decays trivially
    const bool drop = first && last && (*last < *first / 10.0 || (*first == 0.0 && *last == 0.0));
    check.pass = check.conclusive && monotone && drop;
    // with radii missing only an observed increase is decisive; a short drop may be a gap
    if (!check.conclusive && !monotone) check.conclusive = true;
    return check;
}

GrowthCheck check_growth_bound(const TransformFunction& F, const std::vector<double>& s_grid,
                               const std::vector<double>& eta_grid) {
    GrowthCheck check;
    std::vector<double> g(s_grid.size(), 0.0);
    bool blew_up = false;
    for (std::size_t i = 0; i < s_grid.size(); ++i) {
        const double s = s_grid[i];
        for (double eta : eta_grid) {
            double mod;
            try {
                mod = std::abs(F(Complex{s, eta}));
            } catch (const DomainError&) {
                // evaluation failure off the imaginary axis: not a decisive outcome
                check.conclusive = false;
                continue;
            }
            if (!std::isfinite(mod)) {
                blew_up = true;
                g[i] = std::numeric_limits<double>::infinity();
                break;
            }
            g[i] = std::max(g[i], s * mod);
        }
    }
    check.C_hat = *std::max_element(g.begin(), g.end());

    constexpr double blowup_limit = 1e8;
    constexpr double stable_ratio = 1.5;
    blew_up = blew_up || !(check.C_hat <= blowup_limit);
    // compare each end of the s range with a point further inside (one decade on the default grid)
    const std::size_t n = g.size();
    const std::size_t span = std::max<std::size_t>(1, n / 6);
    const bool top_stable = g[n - 1] <= stable_ratio * g[n - 1 - span] + 1e-300;
    const bool bottom_stable = g[0] <= stable_ratio * g[span] + 1e-300;
    check.pass = !blew_up && top_stable && bottom_stable;
    if (!check.pass) check.conclusive = true;
    return check;
}

LoopResidual loop_integral(const TransformFunction& F, const Rect& rect) {
    LoopResidual out;
    out.rect = rect;
    const double width = rect.s2 - rect.s1;
    const double height = rect.eta2 - rect.eta1;
    if (width == 0.0 || height == 0.0) {
        // a degenerate loop traverses each segment once in each direction
        return out;
    }

    const Complex corners[4] = {{rect.s1, rect.eta1},
                                {rect.s2, rect.eta1},
                                {rect.s2, rect.eta2},
                                {rect.s1, rect.eta2}};
    double peak = 0.0;
    bool bad_value = false;
    auto eval = [&](Complex p) {
        const Complex v = F(p);
        if (!finite(v)) {
            bad_value = true;
            return Complex{};
        }
        peak = std::max(peak, std::abs(v));
        return v;
    };

    // coarse pass sets the absolute tolerance scale
    for (int e = 0; e < 4; ++e) {
        const Complex a = corners[e], b = corners[(e + 1) % 4];
        for (int k = 0; k <= 16; ++k) eval(a + (b - a) * (k / 16.0));
    }

    Complex total{};
    bool converged = true;
    for (int e = 0; e < 4; ++e) {
        const Complex a = corners[e], b = corners[(e + 1) % 4];
        const Complex d = b - a;
        auto g = [&](double u) { return eval(a + d * u) * d; };
        const double abs_tol = 1e-13 * std::abs(d) * std::max(peak, 1e-300);
        const auto res = quad::integrate(g, 0.0, 1.0, abs_tol, 1e-13, 4000);
        converged = converged && res.converged;
        total += res.value;
    }
    out.integral = total;
    out.reliable = converged && !bad_value;
    out.residual = peak > 0.0 ? std::abs(total) / (rect.perimeter() * peak) : 0.0;
    return out;
}

std::vector<LoopResidual> check_analyticity_loops(const TransformFunction& F,
                                                  const ProbeSettings& settings) {
    const Rect& region = settings.loop_region;
    std::vector<LoopResidual> loops;
    loops.reserve(static_cast<std::size_t>(settings.loop_count));
    auto run = [&](const Rect& r) {
        try {
            loops.push_back(loop_integral(F, r));
        } catch (const std::exception&) {
            LoopResidual failed;
            failed.rect = r;
            failed.reliable = false;
            failed.residual = std::numeric_limits<double>::quiet_NaN();
            loops.push_back(failed);
        }
    };
    run(region);

    std::mt19937_64 rng(settings.seed);
    auto uniform = [&rng](double lo, double hi) {
        // explicit mapping keeps the stream identical across standard libraries
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        return lo + (hi - lo) * u;
    };
    for (int k = 1; k < settings.loop_count; ++k) {
        double sa = uniform(region.s1, region.s2), sb = uniform(region.s1, region.s2);
        double ea = uniform(region.eta1, region.eta2), eb = uniform(region.eta1, region.eta2);
        run(Rect{std::min(sa, sb), std::max(sa, sb), std::min(ea, eb), std::max(ea, eb)});
    }
    return loops;
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::admissible: return "admissible";
        case Verdict::inadmissible: return "inadmissible";
        case Verdict::inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

AdmissibilityReport assess(const TransformFunction& F, const ProbeSettings& settings) {
    settings.validate();
    AdmissibilityReport report;
    auto fail = [&](const char* id) { report.failed_conditions.emplace_back(id); };
    auto unsure = [&](const char* id) { report.inconclusive_conditions.emplace_back(id); };
    auto flag = [&](bool decisive, const char* id) { decisive ? fail(id) : unsure(id); };

    // axis decay, b > 1
    try {
        const DecayFit fit = estimate_decay(F, settings);
        report.b_hat = fit.b_hat;
        report.c_hat = fit.c_hat;
        report.fit_residual = fit.fit_residual;
        if (fit.dropped > 0) {
            report.diagnostics.push_back("decay fit dropped " + std::to_string(fit.dropped) +
                                         " zero samples");
        }
        if (fit.b_hat <= 1.0 + settings.b_fail_slack) {
            fail(condition::decay);
        } else if (fit.b_hat < 1.0 + settings.b_margin) {
            unsure(condition::decay);
        }
        if (fit.fit_residual > settings.decay_fit_max_residual) unsure(condition::decay_fit);
    } catch (const std::exception& e) {
        report.b_hat = std::numeric_limits<double>::quiet_NaN();
        report.c_hat = std::numeric_limits<double>::quiet_NaN();
        report.fit_residual = std::numeric_limits<double>::quiet_NaN();
        report.diagnostics.emplace_back(e.what());
        unsure(condition::decay);
    }

    // uniform decay on semicircles
    try {
        const SemicircleCheck semi = check_semicircle_decay(F, settings);
        report.semicircle_max = semi.profile;
        if (!semi.pass) flag(semi.conclusive, condition::semicircle);
    } catch (const std::exception& e) {
        report.diagnostics.emplace_back(e.what());
        unsure(condition::semicircle);
    }

    // half-plane growth bound
    try {
        const GrowthCheck growth = check_growth_bound(F, settings.s_grid, settings.growth_eta_grid);
        if (std::isfinite(growth.C_hat)) report.growth_C_hat = growth.C_hat;
        if (!growth.pass) {
            flag(growth.conclusive, condition::growth);
        } else if (!growth.conclusive) {
            unsure(condition::growth);
        }
    } catch (const std::exception& e) {
        report.diagnostics.emplace_back(e.what());
        unsure(condition::growth);
    }

    // analyticity via closed loops
    report.loops = check_analyticity_loops(F, settings);
    bool loop_failed = false, loop_unreliable = false;
    for (const auto& loop : report.loops) {
        report.loop_residuals.push_back(loop.residual);
        if (!loop.reliable) {
            loop_unreliable = true;
            continue;
        }
        if (loop.residual > settings.loop_threshold) loop_failed = true;
    }
    if (loop_failed) {
        fail(condition::analyticity);
    } else if (loop_unreliable) {
        unsure(condition::analyticity);
        report.diagnostics.emplace_back("loop quadrature did not converge on every loop");
    }

    if (!report.failed_conditions.empty()) {
        report.verdict = Verdict::inadmissible;
    } else if (!report.inconclusive_conditions.empty()) {
        report.verdict = Verdict::inconclusive;
    } else {
        report.verdict = Verdict::admissible;
    }
    return report;
}

}  // namespace lgate
