#include <benchmark/benchmark.h>

#include <random>
#include <sstream>

#include "fixtures.hpp"
#include "lrd/ingest.hpp"
#include "lrd/pcap_writer.hpp"

namespace {

std::vector<lrd::PacketRecord> sample_records(std::size_t n)
{
    std::mt19937_64 rng(1);
    std::vector<lrd::PacketRecord> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(lrd::testing::random_record(rng));
    return out;
}

void BM_ParsePcap(benchmark::State& state)
{
    const auto records = sample_records(100'000);
    std::ostringstream buf;
    lrd::PcapWriter w(buf, {});
    for (const auto& r : records) w.write_record(r);
    const std::string bytes = buf.str();
    for (auto _ : state) {
        std::istringstream in(bytes);
        benchmark::DoNotOptimize(lrd::parse_pcap(in).records.size());
    }
    state.SetItemsProcessed(state.iterations() * std::int64_t(records.size()));
    state.SetBytesProcessed(state.iterations() * std::int64_t(bytes.size()));
}

void BM_ParsePacketLog(benchmark::State& state)
{
    const auto records = sample_records(100'000);
    std::ostringstream buf;
    lrd::write_packet_log(buf, records);
    const std::string text = buf.str();
    for (auto _ : state) {
        std::istringstream in(text);
        benchmark::DoNotOptimize(lrd::parse_packet_log(in).records.size());
    }
    state.SetItemsProcessed(state.iterations() * std::int64_t(records.size()));
}

}  // namespace

BENCHMARK(BM_ParsePcap)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ParsePacketLog)->Unit(benchmark::kMillisecond);
