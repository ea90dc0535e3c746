#include <benchmark/benchmark.h>

#include "lrd/synth.hpp"

namespace {

void BM_GenFgn(benchmark::State& state)
{
    std::uint64_t seed = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(lrd::gen_fgn(lrd::SynthSpec{0.8, static_cast<std::size_t>(state.range(0)), 1.0, seed++}));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_GenIid(benchmark::State& state)
{
    std::uint64_t seed = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(lrd::gen_iid_gaussian(static_cast<std::size_t>(state.range(0)), 1.0, seed++));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_GenFgn)->RangeMultiplier(4)->Range(1 << 12, 1 << 18)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GenIid)->Arg(1 << 16);
