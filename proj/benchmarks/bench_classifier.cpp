#include <benchmark/benchmark.h>

#include <random>

#include "fixtures.hpp"
#include "lrd/classifier.hpp"
#include "lrd/series.hpp"

namespace {

std::vector<lrd::PacketRecord> sample_records(std::size_t n)
{
    std::mt19937_64 rng(2);
    std::vector<lrd::PacketRecord> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(lrd::testing::random_record(rng));
    return out;
}

void BM_ClassifyRuleSet(benchmark::State& state)
{
    const auto records = sample_records(100'000);
    const auto& rules = lrd::default_rules();
    for (auto _ : state) {
        int acc = 0;
        for (const auto& r : records) acc += lrd::class_id(lrd::classify(r, rules));
        benchmark::DoNotOptimize(acc);
    }
    state.SetItemsProcessed(state.iterations() * std::int64_t(records.size()));
}

void BM_ClassifyCompiled(benchmark::State& state)
{
    const auto records = sample_records(100'000);
    const lrd::Classifier c(lrd::default_rules());
    for (auto _ : state) {
        benchmark::DoNotOptimize(lrd::count_classes(records, c));
    }
    state.SetItemsProcessed(state.iterations() * std::int64_t(records.size()));
}

void BM_BinSeries(benchmark::State& state)
{
    auto records = sample_records(100'000);
    for (std::size_t i = 0; i < records.size(); ++i) records[i].ts = lrd::Timestamp{std::int64_t(i) * 36'000};
    for (auto _ : state) {
        benchmark::DoNotOptimize(lrd::bin_series(records, 100, lrd::Measure::Bytes, lrd::Timestamp{0}).values.size());
    }
    state.SetItemsProcessed(state.iterations() * std::int64_t(records.size()));
}

}  // namespace

BENCHMARK(BM_ClassifyRuleSet)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ClassifyCompiled)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BinSeries)->Unit(benchmark::kMillisecond);
