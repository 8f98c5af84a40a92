#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "lgate/admissibility.hpp"
#include "lgate/analytic.hpp"
#include "lgate/hypersingular.hpp"
#include "lgate/inversion.hpp"

using namespace lgate;

namespace {

std::vector<double> grid(double a, double b, double h) {
    std::vector<double> out;
    const auto n = static_cast<std::size_t>(std::llround((b - a) / h));
    for (std::size_t i = 0; i <= n; ++i) out.push_back(a + static_cast<double>(i) * h);
    return out;
}

const TransformFunction& double_pole() {
    static const auto F = make_transform([](Complex p) { return 1.0 / ((p + 1.0) * (p + 1.0)); }, "1/(p+1)^2");
    return F;
}

void BM_Gamma(benchmark::State& state) {
    double x = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(lgate::gamma(x));
        x = x < 20.0 ? x + 0.37 : 0.1;
    }
}
BENCHMARK(BM_Gamma);

void BM_PrincipalPower(benchmark::State& state) {
    const Complex p{0.3, 17.0};
    for (auto _ : state) benchmark::DoNotOptimize(principal_power(p, 0.25));
}
BENCHMARK(BM_PrincipalPower);

void BM_Assess(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(assess(double_pole(), ProbeSettings{}));
}
BENCHMARK(BM_Assess)->Unit(benchmark::kMillisecond);

// grid length on [0, 10]
void BM_Invert(benchmark::State& state) {
    const auto t = grid(0.0, 10.0, 10.0 / static_cast<double>(state.range(0)));
    const auto report = assess(double_pole(), ProbeSettings{});
    for (auto _ : state) benchmark::DoNotOptimize(invert(double_pole(), t, InversionSettings{}, report));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(t.size()));
}
BENCHMARK(BM_Invert)->Arg(20)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_OracleVolterra(benchmark::State& state) {
    TimeSignal f;
    f.t_grid = grid(0.0, 5.0, 5.0 / static_cast<double>(state.range(0)));
    for (double t : f.t_grid) f.values.push_back(t * std::exp(-t));
    f.validate_and_update_sup();
    for (auto _ : state) benchmark::DoNotOptimize(oracle_volterra(f, 0.5));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_OracleVolterra)->RangeMultiplier(2)->Range(128, 1024)->Complexity()->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
