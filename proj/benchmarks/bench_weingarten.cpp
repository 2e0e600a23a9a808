#include <benchmark/benchmark.h>

#include <rqc/weingarten.hpp>

using namespace rqc;

static void BM_WgExact(benchmark::State& state) {
    const int p = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto table = wg_exact(17, p);
        benchmark::DoNotOptimize(table);
    }
}
BENCHMARK(BM_WgExact)->DenseRange(3, 8);

static void BM_WgLookup(benchmark::State& state) {
    const auto table = wg_table(17, 6);
    const auto s = Permutation::from_cycle_string(6, "(1 2 3)(4 5)");
    for (auto _ : state) benchmark::DoNotOptimize(table->at(s));
}
BENCHMARK(BM_WgLookup);
