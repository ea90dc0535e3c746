#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "fixtures.hpp"
#include "lrd/analysis.hpp"
#include "lrd/errors.hpp"
#include "lrd/pcap_writer.hpp"
#include "lrd/serialize.hpp"

using namespace lrd;
using lrd::testing::tcp_v4;

namespace {

// Two clock hours of web traffic with a slowly varying packet size.
std::vector<PacketRecord> web_capture(double start, double seconds)
{
    std::vector<PacketRecord> out;
    std::mt19937_64 rng(17);
    for (double t = 0; t < seconds; t += 0.05) {
        out.push_back(tcp_v4(start + t, 40000 + (rng() % 1000), 80, 40 + static_cast<std::uint32_t>(rng() % 1460)));
    }
    return out;
}

IngestStats stats_of(const std::vector<PacketRecord>& recs)
{
    IngestStats s;
    for (const auto& r : recs) s.observe(r);
    return s;
}

AnalysisConfig quick_config()
{
    AnalysisConfig c;
    c.intervals_ms = {1000, 10000};
    c.methods = {EstimatorMethod::VarianceTime, EstimatorMethod::Periodogram};
    return c;
}

}  // namespace

TEST_CASE("single-class capture reports 100 percent web")
{
    const double start = 1700002800.0;  // an hour boundary
    const auto recs = web_capture(start, 7200);
    const auto run = run_analysis(recs, stats_of(recs), default_rules(), quick_config());
    CHECK(run.volume.rows[2].bytes_pct.to_string(2) == "100.00");
    CHECK(run.volume.rows[2].packets_pct.to_string(2) == "100.00");
    for (std::size_t i = 0; i < 6; ++i) {
        if (i != 2) CHECK(run.volume.rows[i].bytes_pct.hundredths == 0);
    }

    std::uint64_t bytes = 0;
    for (const auto& c : run.counters) bytes += c.bytes;
    CHECK(bytes == run.ingest.bytes_total);

    CHECK(run.windows.size() == 2);
    for (const auto& w : run.windows) CHECK(w.analyzed);
    for (const auto& e : run.estimates) CHECK(e.cls == TrafficClass::Web);
    REQUIRE(run.distribution.has_value());
    CHECK(run.distribution->rows[2]->samples > 0);
}

TEST_CASE("empty capture")
{
    CHECK_THROWS_AS(run_analysis({}, IngestStats{}, default_rules(), quick_config()), NoData);
}

TEST_CASE("short edge windows are skipped with a warning")
{
    // 10 minutes before a boundary, then a full hour.
    const auto recs = web_capture(1700002800.0 - 600, 4200);
    const auto run = run_analysis(recs, stats_of(recs), default_rules(), quick_config());
    REQUIRE(run.windows.size() == 2);
    CHECK_FALSE(run.windows[0].analyzed);
    CHECK(run.windows[1].analyzed);
    CHECK_FALSE(run.warnings.empty());
}

TEST_CASE("degenerate series are recorded as skipped")
{
    // One packet per 10 s bin makes the 10 s series constant.
    std::vector<PacketRecord> recs;
    for (int i = 0; i < 3600; i += 10) recs.push_back(tcp_v4(1700002800.0 + i, 40000, 22, 100));
    auto cfg = quick_config();
    cfg.intervals_ms = {10000};
    const auto run = run_analysis(recs, stats_of(recs), default_rules(), cfg);
    CHECK(run.estimates.empty());
    CHECK_FALSE(run.skipped.empty());
}

TEST_CASE("json round trip and determinism")
{
    const auto recs = web_capture(1700002800.0, 3600);
    const auto a = run_analysis(recs, stats_of(recs), default_rules(), quick_config());
    const auto b = run_analysis(recs, stats_of(recs), default_rules(), quick_config());
    const auto ja = run_to_json(a);
    CHECK(ja == run_to_json(b));

    const auto back = run_from_json(ja);
    CHECK(run_to_json(back) == ja);
    CHECK(back.estimates.size() == a.estimates.size());
    CHECK(back.volume.rows[2].bytes_pct == a.volume.rows[2].bytes_pct);

    std::ostringstream c1;
    std::ostringstream c2;
    write_estimates_csv(c1, a);
    write_estimates_csv(c2, back);
    CHECK(c1.str() == c2.str());

    CHECK_THROWS_AS(run_from_json("{}"), Error);
    CHECK_THROWS_AS(run_from_json("not json"), Error);
}

TEST_CASE("whittle diagnostics serialize as null")
{
    HurstEstimate e;
    e.method = EstimatorMethod::Whittle;
    e.h = 0.7;
    const auto j = estimate_to_json(e);
    CHECK(j.find("\"r_squared\":null") != std::string::npos);
}

TEST_CASE("load_capture detects formats")
{
    const auto dir = std::filesystem::temp_directory_path() / "lrd_unit_capture";
    std::filesystem::create_directories(dir);
    const auto recs = web_capture(1700002800.0, 5);
    {
        std::ofstream p(dir / "a.pcap", std::ios::binary);
        PcapWriter w(p, {ByteOrder::Big, true, pcap::linktype_ethernet, 65535});
        for (const auto& r : recs) w.write_record(r);
        std::ofstream l(dir / "a.log");
        write_packet_log(l, recs);
        std::ofstream bad(dir / "bad.log");
        bad << "1,2,3\n";
    }
    CHECK(load_capture(dir / "a.pcap").records == recs);
    CHECK(load_capture(dir / "a.log").records == recs);
    CHECK(load_capture(dir / "a.log", CaptureFormat::Log).records == recs);
    try {
        load_capture(dir / "bad.log");
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("bad.log") != std::string::npos);
    }
    std::filesystem::remove_all(dir);
}
