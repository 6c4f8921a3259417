#include <benchmark/benchmark.h>

#include <random>

#include "nvspin/cavity.hpp"
#include "nvspin/constants.hpp"
#include "nvspin/dynamics.hpp"
#include "nvspin/fitting.hpp"
#include "nvspin/spectra.hpp"

using namespace nvspin;

namespace {

ComplexMatrix random_hermitian(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    ComplexMatrix h(n);
    for (std::size_t i = 0; i < n; ++i) {
        h(i, i) = g(rng);
        for (std::size_t j = 0; j < i; ++j) {
            h(i, j) = cplx(g(rng), g(rng));
            h(j, i) = std::conj(h(i, j));
        }
    }
    return h;
}

void BM_Eigh(benchmark::State& state) {
    const auto h = random_hermitian(static_cast<std::size_t>(state.range(0)), 1);
    for (auto _ : state) benchmark::DoNotOptimize(eigh(h));
}
BENCHMARK(BM_Eigh)->Arg(3)->Arg(6);

void BM_LinesOverSweep(benchmark::State& state) {
    const auto system = static_cast<SpinSystem>(state.range(0));
    const SweepGrid grid{0.0, 0.15, 1000};
    for (auto _ : state) benchmark::DoNotOptimize(lines_over_sweep(system, {}, {-4.0, 95.0}, grid));
}
BENCHMARK(BM_LinesOverSweep)
    ->Arg(static_cast<int>(SpinSystem::nv))
    ->Arg(static_cast<int>(SpinSystem::p1))
    ->Unit(benchmark::kMillisecond);

void BM_FitObjective(benchmark::State& state) {
    const SystemParams p;
    std::vector<ResonancePoint> pts;
    for (const auto& l : lines_over_sweep(SpinSystem::nv, p, {-4.0, 95.0}, SweepGrid{0.005, 0.15, 27}))
        for (const auto& q : l.points) pts.push_back({q.B, q.f, 1.0, {}});
    for (auto _ : state) benchmark::DoNotOptimize(objective(pts, p, {-3.0, 94.0}));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(pts.size()));
}
BENCHMARK(BM_FitObjective)->Unit(benchmark::kMicrosecond);

void BM_SteadyState(benchmark::State& state) {
    RateParams r;
    r.T_I_P1_inv = 40.0;
    r.T_T_P1_inv = 8.0;
    r.T_I_NV_inv = 5.0;
    r.T_1T_NV_inv = 25.0;
    r.T_O_NV_inv = 200.0;
    r.omega_P1 = r.omega_NV = angular(1.464e9);
    r.omega_T = thermal_frequency(3.6);
    for (auto _ : state) benchmark::DoNotOptimize(steady_state(r));
}
BENCHMARK(BM_SteadyState);

void BM_FitS11(benchmark::State& state) {
    const CavityParams c{angular(1.464e9), angular(1.15e6), angular(0.62e6)};
    std::vector<ReflectionSample> data;
    for (int i = 0; i <= 400; ++i) {
        const double w = c.omega_0 + angular(-10e6 + 20e6 * i / 400.0);
        data.push_back({w, s11(w, c), 0.0});
    }
    for (auto _ : state) benchmark::DoNotOptimize(fit_s11_curve(data));
}
BENCHMARK(BM_FitS11)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
