#include "commands.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "lrd/calibration.hpp"
#include "lrd/classifier.hpp"
#include "lrd/errors.hpp"
#include "lrd/ingest.hpp"
#include "lrd/serialize.hpp"
#include "lrd/synth.hpp"

namespace fs = std::filesystem;

namespace lrdtool {

namespace {

std::string_view trim(std::string_view s)
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

std::string read_file(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw lrd::Error(path.string() + ": cannot open");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::ofstream open_output(const fs::path& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw lrd::Error(path.string() + ": cannot write");
    return out;
}

template <typename T>
std::optional<T> parse_number(std::string_view s)
{
    T v{};
    const auto* end = s.data() + s.size();
    const auto [p, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc{} || p != end) return std::nullopt;
    return v;
}

std::vector<fs::path> to_paths(const std::vector<std::string>& in)
{
    return {in.begin(), in.end()};
}

}  // namespace

std::vector<std::string> split_list(std::string_view text)
{
    std::vector<std::string> out;
    while (true) {
        const auto comma = text.find(',');
        const auto item = trim(text.substr(0, comma));
        if (!item.empty()) out.emplace_back(item);
        if (comma == std::string_view::npos) break;
        text.remove_prefix(comma + 1);
    }
    return out;
}

std::int64_t parse_interval_ms(std::string_view text)
{
    struct Unit {
        std::string_view suffix;
        std::int64_t scale;
    };
    // "ms" before "s" so that the longer suffix wins.
    static constexpr Unit units[] = {{"ms", 1}, {"min", 60'000}, {"s", 1000}};
    std::int64_t scale = 1;
    for (const auto& u : units) {
        if (text.size() > u.suffix.size() && text.ends_with(u.suffix)) {
            text.remove_suffix(u.suffix.size());
            scale = u.scale;
            break;
        }
    }
    const auto v = parse_number<std::int64_t>(text);
    if (!v || *v <= 0) throw UsageError("invalid interval '" + std::string(text) + "'");
    return *v * scale;
}

std::vector<std::int64_t> parse_intervals(std::string_view text)
{
    std::vector<std::int64_t> out;
    for (const auto& item : split_list(text)) out.push_back(parse_interval_ms(item));
    if (out.empty()) throw UsageError("no intervals given");
    return out;
}

std::vector<lrd::EstimatorMethod> parse_methods(std::string_view text)
{
    std::vector<lrd::EstimatorMethod> out;
    for (const auto& item : split_list(text)) {
        const auto m = lrd::parse_method(item);
        if (!m) throw UsageError("unknown method '" + item + "'");
        out.push_back(*m);
    }
    if (out.empty()) throw UsageError("no methods given");
    return out;
}

std::vector<lrd::Measure> parse_measures(std::string_view text)
{
    if (text == "both") return {lrd::Measure::Bytes, lrd::Measure::Packets};
    const auto m = lrd::parse_measure(text);
    if (!m) throw UsageError("unknown measure '" + std::string(text) + "'");
    return {*m};
}

std::vector<double> parse_doubles(std::string_view text)
{
    std::vector<double> out;
    for (const auto& item : split_list(text)) {
        const auto v = parse_number<double>(item);
        if (!v) throw UsageError("invalid number '" + item + "'");
        out.push_back(*v);
    }
    if (out.empty()) throw UsageError("empty list");
    return out;
}

std::optional<lrd::CaptureFormat> parse_format(std::string_view text)
{
    if (text == "auto") return std::nullopt;
    if (text == "pcap") return lrd::CaptureFormat::Pcap;
    if (text == "log") return lrd::CaptureFormat::Log;
    throw UsageError("unknown input format '" + std::string(text) + "'");
}

int run_ingest(const IngestOptions& o)
{
    const auto format = parse_format(o.format);
    std::vector<lrd::PacketRecord> records;
    lrd::IngestStats stats;
    for (const auto& path : o.inputs) {
        auto r = lrd::load_capture(path, format);
        records.insert(records.end(), r.records.begin(), r.records.end());
        stats.merge(r.stats);
    }

    if (o.out.empty()) {
        lrd::write_packet_log(std::cout, records);
    } else {
        auto out = open_output(o.out);
        lrd::write_packet_log(out, records);
    }
    std::cerr << "packets_parsed=" << stats.packets_parsed
              << " packets_skipped_non_ip=" << stats.packets_skipped_non_ip
              << " bytes_total=" << stats.bytes_total << '\n';
    return 0;
}

int run_analyze(const AnalyzeOptions& o)
{
    if (o.format != "csv" && o.format != "json") throw UsageError("--format must be csv or json");

    lrd::AnalysisConfig config;
    config.intervals_ms = parse_intervals(o.intervals);
    config.methods = parse_methods(o.methods);
    config.measures = parse_measures(o.measure);
    config.tz_offset_minutes = o.tz_offset;

    const lrd::RuleSet rules = o.rules.empty() ? lrd::default_rules() : lrd::load_ruleset(read_file(o.rules));
    const auto inputs = to_paths(o.inputs);
    const auto run = lrd::run_analysis(inputs, parse_format("auto"), rules, config);

    const fs::path dir = o.out;
    fs::create_directories(dir);
    open_output(dir / "run.json") << lrd::run_to_json(run);
    if (o.format == "csv") {
        auto vol = open_output(dir / "volume.csv");
        lrd::write_volume_csv(vol, run.volume);
        auto est = open_output(dir / "estimates.csv");
        lrd::write_estimates_csv(est, run);
        if (run.distribution) {
            auto d = open_output(dir / "hurst_distribution.csv");
            lrd::write_distribution_csv(d, *run.distribution);
        }
        if (run.activity) {
            auto a = open_output(dir / "activity.csv");
            lrd::write_activity_csv(a, *run.activity);
        }
    }

    for (const auto& w : run.warnings) std::cerr << "warning: " << w << '\n';
    std::cerr << run.estimates.size() << " estimates, " << run.skipped.size() << " skipped, written to "
              << dir.string() << '\n';
    return 0;
}

int run_synth(const SynthOptions& o)
{
    lrd::BinnedSeries series;
    series.interval_ms = 1;
    series.values = lrd::gen_fgn(lrd::SynthSpec{o.h, o.n, o.sigma2, o.seed});
    const std::string comment = "synthetic fgn h=" + lrd::format_number(o.h) + ",n=" + std::to_string(o.n) +
                                ",sigma2=" + lrd::format_number(o.sigma2) + ",seed=" + std::to_string(o.seed);
    if (o.out.empty()) {
        lrd::write_series_csv(std::cout, series, comment);
    } else {
        auto out = open_output(o.out);
        lrd::write_series_csv(out, series, comment);
    }
    return 0;
}

int run_calibrate(const CalibrateOptions& o)
{
    lrd::CalibrationConfig config;
    config.h_grid = parse_doubles(o.h_grid);
    config.seeds = o.seeds;
    config.n = o.n;
    config.base_seed = o.seed;
    config.methods = parse_methods(o.methods);
    if (config.seeds == 0) throw UsageError("--seeds must be positive");

    const auto rows = lrd::run_calibration(config);
    if (o.out.empty()) {
        lrd::write_calibration_csv(std::cout, rows);
    } else {
        auto out = open_output(o.out);
        lrd::write_calibration_csv(out, rows);
    }
    for (const auto& s : lrd::summarize(rows)) {
        std::cerr << lrd::to_string(s.method) << " h=" << lrd::format_number(s.h_true)
                  << " mean_h=" << lrd::format_number(s.mean_h)
                  << " mean_abs_err=" << lrd::format_number(s.mean_abs_err) << '\n';
    }
    return 0;
}

int run_report(const ReportOptions& o)
{
    const auto run = lrd::run_from_json(read_file(o.run_json));
    std::cout << lrd::render_volume_table(run.volume) << '\n';
    if (run.distribution) {
        std::cout << lrd::render_distribution_table(*run.distribution) << '\n';
    } else {
        std::cout << "H distribution: n/a (no estimates)\n\n";
    }
    if (run.activity) {
        std::cout << lrd::render_activity_table(*run.activity);
    } else {
        std::cout << "Activity periods: n/a (no estimates)\n";
    }
    return 0;
}

}  // namespace lrdtool
