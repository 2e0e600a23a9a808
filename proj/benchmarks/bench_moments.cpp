#include <benchmark/benchmark.h>

#include <rqc/moments.hpp>

using namespace rqc;

static void BM_RankOneMoment(benchmark::State& state) {
    const int p = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(rank_one_output_moment(p, 16, 16));
}
BENCHMARK(BM_RankOneMoment)->DenseRange(4, 8);

static void BM_ConjugateMoment(benchmark::State& state) {
    const int p = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(bi_channel_conjugate_moment(p, 12, 12, {}, 2));
}
BENCHMARK(BM_ConjugateMoment)->DenseRange(2, 3)->Unit(benchmark::kMillisecond);

static void BM_IndependentMoment(benchmark::State& state) {
    const int p = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(bi_channel_independent_moment(p, 8, 8, {}, 2));
}
BENCHMARK(BM_IndependentMoment)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

static void BM_QzqMoment(benchmark::State& state) {
    const int p = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(qzq_moment(p, 8, 8, {}, 2));
}
BENCHMARK(BM_QzqMoment)->DenseRange(2, 3)->Unit(benchmark::kMillisecond);
