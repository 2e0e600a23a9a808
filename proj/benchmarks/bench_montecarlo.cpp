#include <benchmark/benchmark.h>

#include <rqc/montecarlo.hpp>

using namespace rqc::mc;

static void BM_HaarUnitary(benchmark::State& state) {
    const int m = static_cast<int>(state.range(0));
    RngStream rng(1);
    for (auto _ : state) benchmark::DoNotOptimize(sample_haar_unitary(m, rng));
    state.SetComplexityN(m);
}
BENCHMARK(BM_HaarUnitary)->RangeMultiplier(2)->Range(32, 256)->Complexity();

static void BM_BiChannelFactor(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    RngStream rng(2);
    for (auto _ : state)
        benchmark::DoNotOptimize(bi_channel_factor(BiMode::Conjugate, n, n, rng));
}
BENCHMARK(BM_BiChannelFactor)->DenseRange(10, 40, 10)->Unit(benchmark::kMillisecond);

static void BM_BiChannelSpectrum(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    RngStream rng(3);
    for (auto _ : state) {
        const auto m = bi_channel_factor(BiMode::Conjugate, n, n, rng);
        benchmark::DoNotOptimize(psd_factor_spectrum(m));
    }
}
BENCHMARK(BM_BiChannelSpectrum)->DenseRange(10, 30, 10)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
