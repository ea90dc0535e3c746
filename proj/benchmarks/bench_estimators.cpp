#include <benchmark/benchmark.h>

#include "lrd/estimators.hpp"
#include "lrd/synth.hpp"

namespace {

void run_method(benchmark::State& state, lrd::EstimatorMethod method)
{
    const auto x = lrd::gen_fgn(lrd::SynthSpec{0.75, static_cast<std::size_t>(state.range(0)), 1.0, 1});
    for (auto _ : state) {
        benchmark::DoNotOptimize(lrd::estimate(method, x).h);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_VarianceTime(benchmark::State& s) { run_method(s, lrd::EstimatorMethod::VarianceTime); }
void BM_RescaledRange(benchmark::State& s) { run_method(s, lrd::EstimatorMethod::RescaledRange); }
void BM_Periodogram(benchmark::State& s) { run_method(s, lrd::EstimatorMethod::Periodogram); }
void BM_Whittle(benchmark::State& s) { run_method(s, lrd::EstimatorMethod::Whittle); }

void BM_FgnSpectrum(benchmark::State& state)
{
    const lrd::FgnSpectrum g(0.7);
    double lambda = 0.001;
    for (auto _ : state) {
        benchmark::DoNotOptimize(g(lambda));
        lambda = lambda < 3.0 ? lambda + 0.01 : 0.001;
    }
}

}  // namespace

BENCHMARK(BM_VarianceTime)->RangeMultiplier(4)->Range(1 << 12, 1 << 18)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RescaledRange)->RangeMultiplier(4)->Range(1 << 12, 1 << 18)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Periodogram)->RangeMultiplier(4)->Range(1 << 12, 1 << 18)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Whittle)->RangeMultiplier(4)->Range(1 << 12, 1 << 18)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FgnSpectrum);
