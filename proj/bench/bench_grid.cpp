#include <benchmark/benchmark.h>

#include <omp.h>

#include "ncdq/grid.hpp"
#include "ncdq/oscillator.hpp"

namespace {

using namespace ncdq;

struct Fixture {
    OscillatorSolution sol = solve({1.0, 2.0, 1.5, 2.5, 0.6}, {1.0, 0.2, -0.1});
    FloatGaussLag w = to_original_coords(wigner_state(sol, 4, 3), sol);
};

const Fixture& fixture() {
    static const Fixture f;
    return f;
}

GridSpec grid(std::size_t side) {
    GridSpec g;
    g.axis1 = {Var::x1, -3.0, 3.0, side};
    g.axis2 = {Var::p1, -3.0, 3.0, side};
    return g;
}

void BM_WignerGridSerial(benchmark::State& state) {
    const auto& f = fixture();
    const GridSpec g = grid(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        auto v = tabulate_serial(g, [&](const PhasePoint& pt) { return gausslag_eval(f.w, pt).real(); });
        benchmark::DoNotOptimize(v.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(g.size()));
}

void BM_WignerGridParallel(benchmark::State& state) {
    const auto& f = fixture();
    const GridSpec g = grid(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        auto v = tabulate_parallel(g, [&](const PhasePoint& pt) { return gausslag_eval(f.w, pt).real(); });
        benchmark::DoNotOptimize(v.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(g.size()));
    state.counters["threads"] = omp_get_max_threads();
}

void BM_EvolveGridParallel(benchmark::State& state) {
    const auto& f = fixture();
    const CoupledEvolution evo = time_evolution(f.sol, Complex(0.3, 0.0));
    const GridSpec g = grid(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        auto v = tabulate_parallel(g, [&](const PhasePoint& pt) { return evo.at_original(pt); });
        benchmark::DoNotOptimize(v.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(g.size()));
}

}  // namespace

BENCHMARK(BM_WignerGridSerial)->Arg(64)->Arg(256);
BENCHMARK(BM_WignerGridParallel)->Arg(64)->Arg(256);
BENCHMARK(BM_EvolveGridParallel)->Arg(256);

BENCHMARK_MAIN();
