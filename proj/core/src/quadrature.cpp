#include "lgate/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

namespace lgate::quad {

double GaussKronrod15::node(int k) {
    return k < 7 ? -kronrod_nodes[static_cast<std::size_t>(k)]
                 : kronrod_nodes[static_cast<std::size_t>(14 - k)];
}

double GaussKronrod15::kronrod_weight(int k) {
    return kronrod_weights[static_cast<std::size_t>(k < 7 ? k : 14 - k)];
}

double GaussKronrod15::gauss_weight(int k) {
    const int j = k < 7 ? k : 14 - k;
    return (j % 2 == 1) ? gauss_weights[static_cast<std::size_t>(j / 2)] : 0.0;
}

PanelEstimate gk15(const std::function<Complex(double)>& g, double a, double b) {
    const double centre = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    PanelEstimate est{};
    for (int k = 0; k < GaussKronrod15::points; ++k) {
        const Complex v = g(centre + half * GaussKronrod15::node(k));
        est.kronrod += GaussKronrod15::kronrod_weight(k) * v;
        est.gauss += GaussKronrod15::gauss_weight(k) * v;
    }
    est.kronrod *= half;
    est.gauss *= half;
    return est;
}

namespace {

struct Panel {
    double a, b;
    Complex value;
    double error;
    int depth;
    std::size_t order;  // tie-breaker keeps the heap order deterministic
};

struct WorseFirst {
    bool operator()(const Panel& x, const Panel& y) const {
        if (x.error != y.error) return x.error < y.error;
        return x.order > y.order;
    }
};

}  // namespace

AdaptiveResult integrate(const std::function<Complex(double)>& g, double a, double b,
                         double abs_tol, double rel_tol, int max_panels) {
    AdaptiveResult result;
    if (a == b) return result;

    constexpr int max_depth = 60;
    std::size_t order = 0;
    std::priority_queue<Panel, std::vector<Panel>, WorseFirst> heap;
    Complex value{};
    double error = 0.0;
    auto push = [&](double lo, double hi, int depth) {
        const PanelEstimate est = gk15(g, lo, hi);
        result.evaluations += GaussKronrod15::points;
        const double err = std::abs(est.kronrod - est.gauss);
        heap.push({lo, hi, est.kronrod, err, depth, order++});
        value += est.kronrod;
        error += err;
    };
    push(a, b, 0);

    // running totals only steer the loop; the result is re-summed below
    while (error > std::max(abs_tol, rel_tol * std::abs(value))) {
        if (static_cast<int>(heap.size()) >= max_panels) {
            result.converged = false;
            break;
        }
        const Panel worst = heap.top();
        if (worst.depth >= max_depth) {
            result.converged = false;
            break;
        }
        heap.pop();
        value -= worst.value;
        error -= worst.error;
        const double mid = 0.5 * (worst.a + worst.b);
        push(worst.a, mid, worst.depth + 1);
        push(mid, worst.b, worst.depth + 1);
    }

    std::vector<Panel> panels;
    panels.reserve(heap.size());
    while (!heap.empty()) {
        panels.push_back(heap.top());
        heap.pop();
    }
    std::sort(panels.begin(), panels.end(),
              [](const Panel& x, const Panel& y) { return x.a < y.a; });
    for (const auto& p : panels) {
        result.value += p.value;
        result.error += p.error;
    }
    return result;
}

}  // namespace lgate::quad
