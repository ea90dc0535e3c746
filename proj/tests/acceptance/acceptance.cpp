// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits non-zero when any criterion fails.

#include <json.hpp>

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

#include "fixtures.hpp"
#include "lrd/calibration.hpp"
#include "lrd/classifier.hpp"
#include "lrd/estimators.hpp"
#include "lrd/ingest.hpp"
#include "lrd/pcap_writer.hpp"
#include "lrd/report.hpp"
#include "lrd/series.hpp"
#include "lrd/synth.hpp"

namespace fs = std::filesystem;
using namespace lrd;

namespace {

#ifndef LRDTOOL_PATH
#define LRDTOOL_PATH ""
#endif

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(double v, int digits = 4)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

std::string read_bytes(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run_tool(const std::string& args)
{
    const std::string cmd = std::string("\"") + LRDTOOL_PATH + "\" " + args + " >/dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    return rc == -1 ? -1 : WEXITSTATUS(rc);
}

fs::path scratch_dir()
{
    const auto dir = fs::temp_directory_path() / ("lrd_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    return dir;
}

// ---- 1: calibration ------------------------------------------------------

double tolerance(EstimatorMethod m)
{
    switch (m) {
    case EstimatorMethod::Whittle: return 0.03;
    case EstimatorMethod::RescaledRange: return 0.08;
    default: return 0.05;
    }
}

Outcome calibration()
{
    const auto t0 = std::chrono::steady_clock::now();
    const auto rows = run_calibration(CalibrationConfig{});
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    Outcome o{secs < 180.0, ""};
    std::string worst;
    for (const auto& s : summarize(rows)) {
        const bool ok = s.count == 20 && s.mean_abs_err <= tolerance(s.method);
        o.pass = o.pass && ok;
        if (!ok) worst += " " + std::string(to_string(s.method)) + "@" + fmt(s.h_true, 2) + "=" + fmt(s.mean_abs_err);
    }
    std::map<EstimatorMethod, double> max_err;
    for (const auto& s : summarize(rows)) max_err[s.method] = std::max(max_err[s.method], s.mean_abs_err);
    for (const auto& [m, e] : max_err) o.detail += std::string(to_string(m)) + " max " + fmt(e) + "; ";
    o.detail += fmt(secs, 1) + " s";
    if (!worst.empty()) o.detail += "; over tolerance:" + worst;
    return o;
}

// ---- 2: white noise ------------------------------------------------------

Outcome white_noise()
{
    std::map<EstimatorMethod, double> mean;
    for (std::uint64_t s = 0; s < 20; ++s) {
        const auto x = gen_iid_gaussian(1u << 16, 1.0, 10'000 + s);
        for (const auto m : all_methods) mean[m] += estimate(m, x).h / 20.0;
    }
    Outcome o{true, ""};
    for (const auto& [m, h] : mean) {
        const double hi = m == EstimatorMethod::RescaledRange ? 0.62 : 0.55;
        o.pass = o.pass && h >= 0.45 && h <= hi;
        o.detail += std::string(to_string(m)) + " " + fmt(h) + "; ";
    }
    return o;
}

// ---- 3: autocovariance ---------------------------------------------------

Outcome autocovariance()
{
    double worst_zero = 0.0;
    for (std::int64_t k = 1; k <= 1000; ++k) {
        for (const double s2 : {0.5, 1.0, 7.0}) worst_zero = std::max(worst_zero, std::fabs(theoretical_acov(0.5, s2, k)));
    }
    Outcome o{worst_zero <= 1e-12, "max |gamma| at h=0.5: " + fmt(worst_zero * 1e12, 3) + "e-12; ratios"};
    for (const double h : {0.6, 0.75, 0.9}) {
        const double k = 1e4;
        const double ratio = theoretical_acov(h, 1.0, 10000) / (h * (2 * h - 1) * std::pow(k, 2 * h - 2));
        o.pass = o.pass && ratio >= 0.99 && ratio <= 1.01;
        o.detail += " " + fmt(ratio, 6);
    }
    return o;
}

// ---- 4: variance decay ---------------------------------------------------

Outcome variance_decay()
{
    const double h = 0.8;
    const std::size_t levels[] = {4, 16, 64};
    double ratio[3] = {};
    for (std::uint64_t s = 0; s < 20; ++s) {
        const auto x = gen_fgn(SynthSpec{h, 1u << 16, 1.0, 20'000 + s});
        const double v = sample_mean_var(x).variance;
        for (int i = 0; i < 3; ++i) ratio[i] += sample_mean_var(aggregate_level(x, levels[i]).values).variance / v / 20.0;
    }
    Outcome o{true, ""};
    for (int i = 0; i < 3; ++i) {
        const double expect = std::pow(double(levels[i]), -0.4);
        const double rel = ratio[i] / expect - 1.0;
        o.pass = o.pass && std::fabs(rel) <= 0.10;
        o.detail += "m=" + std::to_string(levels[i]) + " rel " + fmt(rel, 3) + "; ";
    }
    return o;
}

// ---- 5: classifier partition ---------------------------------------------

Outcome classifier_partition()
{
    const auto& rules = default_rules();
    const Classifier fast(rules);
    std::mt19937_64 rng(2024);
    std::vector<PacketRecord> records;
    records.reserve(1'000'000);
    std::uint64_t bytes = 0;
    for (int i = 0; i < 1'000'000; ++i) {
        records.push_back(lrd::testing::random_record(rng));
        bytes += records.back().length;
    }
    std::uint64_t failures = 0;
    std::array<std::uint64_t, traffic_class_count> seen{};
    for (const auto& r : records) {
        try {
            const auto c = classify(r, rules);
            const int id = class_id(c);
            if (id < 1 || id > 6 || fast(r) != c) {
                ++failures;
            } else {
                ++seen[class_index(c)];
            }
        } catch (...) {
            ++failures;
        }
    }
    const auto stream = classify_stream(records, rules);
    std::uint64_t pk = 0;
    std::uint64_t by = 0;
    std::uint64_t listed = 0;
    for (std::size_t i = 0; i < traffic_class_count; ++i) {
        pk += stream.counters[i].packets;
        by += stream.counters[i].bytes;
        listed += stream.records[i].size();
        if (stream.counters[i].packets != seen[i]) ++failures;
    }
    const bool conserved = pk == records.size() && by == bytes && listed == records.size();
    std::string dist;
    for (auto n : seen) dist += std::to_string(n) + " ";
    return {failures == 0 && conserved,
            "failures " + std::to_string(failures) + ", conservation " + (conserved ? "exact" : "broken") +
                ", per class " + dist};
}

// ---- 6 and 7: pipeline through the CLI -----------------------------------

// One clock hour of port-80 traffic whose per-100 ms byte counts follow
// 20000 + 4000 * fGn(h = 0.8), split into packets of at most 1500 bytes.
void write_fgn_capture(const fs::path& path)
{
    const std::int64_t start = 1'700'002'800;  // hour boundary
    const std::size_t bins = 36'000;
    const auto noise = gen_fgn(SynthSpec{0.8, bins, 1.0, 8});

    std::ofstream out(path, std::ios::binary);
    PcapWriter writer(out, {});
    for (std::size_t k = 0; k < bins; ++k) {
        const auto total = static_cast<std::uint32_t>(std::max(100.0, std::round(20000.0 + 4000.0 * noise[k])));
        const std::uint32_t packets = (total + 1499) / 1500;
        const std::int64_t bin_start = (start * 1000 + std::int64_t(k) * 100) * 1000;
        for (std::uint32_t p = 0; p < packets; ++p) {
            const std::uint32_t len = total / packets + (p < total % packets ? 1 : 0);
            PacketRecord r = lrd::testing::tcp_v4(0, static_cast<std::uint16_t>(40000 + p), 80, len);
            r.ts = Timestamp{bin_start + std::int64_t(p) * 100'000 / packets};
            writer.write_record(r);
        }
    }
}

Outcome pipeline(const fs::path& dir)
{
    if (std::string(LRDTOOL_PATH).empty()) return {false, "lrdtool not built"};
    const auto pcap = dir / "fgn.pcap";
    write_fgn_capture(pcap);
    const auto out = dir / "pipeline";
    const int rc = run_tool("analyze \"" + pcap.string() + "\" --intervals 100ms --methods vt,rs,pgram,whittle "
                            "--measure bytes --out \"" + out.string() + "\" --format json");
    if (rc != 0) return {false, "analyze exited with " + std::to_string(rc)};

    const auto run = nlohmann::json::parse(read_bytes(out / "run.json"));
    std::optional<double> vt;
    std::string others;
    for (const auto& e : run.at("estimates")) {
        if (e.at("class") != 3 || e.at("interval_ms") != 100 || e.at("measure") != "bytes") continue;
        const std::string m = e.at("estimate").at("method");
        const double h = e.at("estimate").at("h");
        if (m == "variance_time") {
            vt = h;
        } else {
            others += " " + m + " " + fmt(h);
        }
    }
    if (!vt) return {false, "no class-3 variance_time estimate in run.json"};
    return {*vt >= 0.72 && *vt <= 0.88, "class 3 variance_time h " + fmt(*vt) + " (others:" + others + ")"};
}

Outcome determinism(const fs::path& dir)
{
    if (std::string(LRDTOOL_PATH).empty()) return {false, "lrdtool not built"};
    const auto pcap = dir / "fgn.pcap";
    if (!fs::exists(pcap)) write_fgn_capture(pcap);

    std::vector<std::string> diffs;
    for (int i = 0; i < 2; ++i) {
        const auto out = dir / ("det_" + std::to_string(i));
        if (run_tool("analyze \"" + pcap.string() + "\" --out \"" + out.string() + "\" --format csv") != 0) {
            return {false, "analyze failed"};
        }
        if (run_tool("calibrate --seed 7 --out \"" + (dir / ("cal_" + std::to_string(i) + ".csv")).string() + "\"") != 0) {
            return {false, "calibrate failed"};
        }
    }
    std::size_t compared = 0;
    for (const auto& entry : fs::directory_iterator(dir / "det_0")) {
        const auto other = dir / "det_1" / entry.path().filename();
        ++compared;
        if (!fs::exists(other) || read_bytes(entry.path()) != read_bytes(other)) {
            diffs.push_back(entry.path().filename().string());
        }
    }
    ++compared;
    if (read_bytes(dir / "cal_0.csv") != read_bytes(dir / "cal_1.csv")) diffs.push_back("calibration csv");
    std::string detail = std::to_string(compared) + " files compared";
    for (const auto& d : diffs) detail += ", differs: " + d;
    return {diffs.empty() && compared >= 5, detail};
}

// ---- 8: format fidelity --------------------------------------------------

std::uint32_t get_le32(const std::string& s, std::size_t at)
{
    std::uint32_t v = 0;
    for (int i = 3; i >= 0; --i) v = (v << 8) | static_cast<unsigned char>(s[at + std::size_t(i)]);
    return v;
}

void put32(std::string& s, std::size_t at, std::uint32_t v, bool big)
{
    for (int i = 0; i < 4; ++i) {
        const int shift = big ? 24 - 8 * i : 8 * i;
        s[at + std::size_t(i)] = static_cast<char>((v >> shift) & 0xFF);
    }
}

void put16(std::string& s, std::size_t at, std::uint16_t v, bool big)
{
    s[at] = static_cast<char>(big ? v >> 8 : v & 0xFF);
    s[at + 1] = static_cast<char>(big ? v & 0xFF : v >> 8);
}

// Rewrites a little-endian microsecond capture into the requested variant.
std::string convert_capture(const std::string& le_usec, bool big, bool nanos)
{
    std::string s = le_usec;
    put32(s, 0, nanos ? 0xa1b23c4d : 0xa1b2c3d4, big);
    put16(s, 4, 2, big);
    put16(s, 6, 4, big);
    for (const std::size_t at : {8u, 12u, 16u, 20u}) put32(s, at, get_le32(le_usec, at), big);
    std::size_t off = 24;
    while (off < s.size()) {
        const std::uint32_t sec = get_le32(le_usec, off);
        const std::uint32_t usec = get_le32(le_usec, off + 4);
        const std::uint32_t incl = get_le32(le_usec, off + 8);
        const std::uint32_t orig = get_le32(le_usec, off + 12);
        put32(s, off, sec, big);
        // Sub-microsecond digits must be dropped on read.
        put32(s, off + 4, nanos ? usec * 1000 + 999 : usec, big);
        put32(s, off + 8, incl, big);
        put32(s, off + 12, orig, big);
        off += 16 + incl;
    }
    return s;
}

Outcome format_fidelity()
{
    std::mt19937_64 rng(99);
    std::vector<PacketRecord> records;
    for (int i = 0; i < 20'000; ++i) records.push_back(lrd::testing::random_record(rng));

    std::ostringstream le;
    PcapWriter writer(le, {});
    for (const auto& r : records) writer.write_record(r);
    const std::string base = le.str();

    int identical = 0;
    for (const bool big : {false, true}) {
        for (const bool nanos : {false, true}) {
            std::istringstream in(convert_capture(base, big, nanos));
            if (parse_pcap(in).records == records) ++identical;
        }
    }
    std::ostringstream log;
    write_packet_log(log, records);
    std::istringstream log_in(log.str());
    const bool lossless = parse_packet_log(log_in).records == records;
    std::ostringstream again;
    write_packet_log(again, records);
    return {identical == 4 && lossless && again.str() == log.str(),
            std::to_string(identical) + "/4 pcap variants identical, log round trip " +
                (lossless ? "lossless" : "lossy") + " over " + std::to_string(records.size()) + " records"};
}

// ---- 9: report invariants ------------------------------------------------

Outcome report_invariants()
{
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> hdist(0.1, 1.05);
    std::int64_t worst_volume = 0;
    std::int64_t worst_row = 0;
    for (int trial = 0; trial < 20'000; ++trial) {
        ClassCounters c{};
        for (auto& v : c) {
            const auto scale = std::uint64_t{1} << (rng() % 44);
            v.bytes = rng() % scale;
            v.packets = rng() % (scale / 40 + 1);
        }
        c[rng() % 6] += ClassVolume{1, 1};
        const auto t = volume_report(c).totals();
        worst_volume = std::max<std::int64_t>({worst_volume, std::llabs(t.bytes_pct.hundredths - 10000),
                                               std::llabs(t.packets_pct.hundredths - 10000)});

        std::vector<SampleEstimate> samples;
        const int n = 1 + int(rng() % 80);
        for (int i = 0; i < n; ++i) {
            samples.push_back({all_traffic_classes[rng() % 6], all_periods[rng() % 3], hdist(rng),
                               1 + rng() % 10'000'000'000ULL});
        }
        for (const auto& row : hurst_distribution_report(samples).rows) {
            if (!row) continue;
            std::int64_t s = 0;
            std::int64_t v = 0;
            for (std::size_t b = 0; b < 4; ++b) {
                s += row->sample_pct[b].hundredths;
                v += (*row->volume_pct)[b].hundredths;
            }
            worst_row = std::max<std::int64_t>({worst_row, std::llabs(s - 10000), std::llabs(v - 10000)});
        }
    }
    return {worst_volume <= 5 && worst_row <= 20,
            "max volume column deviation " + fmt(double(worst_volume) / 100, 2) + ", max distribution row deviation " +
                fmt(double(worst_row) / 100, 2)};
}

}  // namespace

int main()
{
    const auto dir = scratch_dir();
    struct Criterion {
        int id;
        const char* name;
        std::function<Outcome()> check;
    };
    const std::vector<Criterion> criteria = {
        {1, "estimator calibration", calibration},
        {2, "white-noise baseline", white_noise},
        {3, "autocovariance exactness", autocovariance},
        {4, "variance-decay law", variance_decay},
        {5, "classifier partition", classifier_partition},
        {6, "pipeline end-to-end oracle", [&] { return pipeline(dir); }},
        {7, "determinism", [&] { return determinism(dir); }},
        {8, "format fidelity", format_fidelity},
        {9, "report invariants", report_invariants},
    };

    int failed = 0;
    for (const auto& c : criteria) {
        Outcome o;
        try {
            o = c.check();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        if (!o.pass) ++failed;
        while (!o.detail.empty() && (o.detail.back() == ' ' || o.detail.back() == ';')) o.detail.pop_back();
        std::cout << "criterion " << c.id << " " << (o.pass ? "PASS" : "FAIL") << ": " << c.name << " (" << o.detail
                  << ")" << std::endl;
    }
    fs::remove_all(dir);
    std::cout << (criteria.size() - std::size_t(failed)) << "/" << criteria.size() << " criteria passed" << std::endl;
    return failed == 0 ? 0 : 1;
}
