#include "lrd/analysis.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <map>

#include "lrd/errors.hpp"

namespace lrd {

IngestResult load_capture(const std::filesystem::path& path, std::optional<CaptureFormat> format)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(path.string() + ": cannot open");
    }
    if (!format) {
        std::array<unsigned char, 4> head{};
        in.read(reinterpret_cast<char*>(head.data()), 4);
        const auto got = in.gcount();
        in.clear();
        in.seekg(0);
        format = CaptureFormat::Log;
        if (got == 4) {
            const std::uint32_t le = head[0] | (head[1] << 8) | (head[2] << 16) | (std::uint32_t{head[3]} << 24);
            for (const std::uint32_t m : {pcap::magic_usec, pcap::magic_nsec, pcap::magic_usec_swapped,
                                          pcap::magic_nsec_swapped}) {
                if (le == m) {
                    format = CaptureFormat::Pcap;
                }
            }
        }
    }
    try {
        return *format == CaptureFormat::Pcap ? parse_pcap(in) : parse_packet_log(in);
    } catch (const Error& e) {
        throw Error(path.string() + ": " + e.what());
    }
}

EstimatorMethod preferred_bucket_method(const AnalysisConfig& config)
{
    if (config.methods.empty() ||
        std::find(config.methods.begin(), config.methods.end(), EstimatorMethod::VarianceTime) !=
            config.methods.end()) {
        return EstimatorMethod::VarianceTime;
    }
    return config.methods.front();
}

Measure preferred_bucket_measure(const AnalysisConfig& config)
{
    if (config.measures.empty() ||
        std::find(config.measures.begin(), config.measures.end(), Measure::Bytes) != config.measures.end()) {
        return Measure::Bytes;
    }
    return config.measures.front();
}

std::vector<SampleEstimate> AnalysisRun::bucket_samples() const
{
    std::vector<SampleEstimate> out;
    for (const auto& e : estimates) {
        if (e.estimate.method != bucket_method || e.measure != bucket_measure) {
            continue;
        }
        out.push_back(SampleEstimate{e.cls, windows.at(e.window).period, e.estimate.h, e.volume_bytes});
    }
    return out;
}

void build_reports(AnalysisRun& run)
{
    run.volume = volume_report(run.counters);
    const auto samples = run.bucket_samples();
    run.distribution.reset();
    run.activity.reset();
    if (!samples.empty()) {
        run.distribution = hurst_distribution_report(samples);
        run.activity = activity_report(samples);
    }
}

namespace {

constexpr std::int64_t micros_per_second = 1'000'000;

std::int64_t floor_div(std::int64_t a, std::int64_t b)
{
    const std::int64_t q = a / b;
    return (a % b != 0 && ((a < 0) != (b < 0))) ? q - 1 : q;
}

std::vector<SampleWindow> plan_windows(const IngestStats& stats, const AnalysisConfig& config,
                                       std::vector<std::string>& warnings)
{
    const std::int64_t span = config.sample_seconds * micros_per_second;
    const std::int64_t offset = static_cast<std::int64_t>(config.tz_offset_minutes) * 60 * micros_per_second;
    const Timestamp first = *stats.first_ts;
    const Timestamp last = *stats.last_ts;

    std::vector<SampleWindow> windows;
    const std::int64_t first_idx = floor_div(first.micros + offset, span);
    const std::int64_t last_idx = floor_div(last.micros + offset, span);
    for (std::int64_t idx = first_idx; idx <= last_idx; ++idx) {
        SampleWindow w;
        w.start = Timestamp{idx * span - offset};
        w.end = Timestamp{w.start.micros + span};
        w.series_start = std::max(w.start, first);
        w.series_end = std::min(w.end, Timestamp{last.micros + 1});
        w.period = label_activity(w.start, config.tz_offset_minutes);
        const std::int64_t coverage = w.series_end.micros - w.series_start.micros;
        w.analyzed = coverage >= config.min_coverage_seconds * micros_per_second;
        if (!w.analyzed) {
            warnings.push_back("window starting " + format_timestamp(w.start) + " skipped: " +
                               format_timestamp(Timestamp{coverage}) + " s of capture coverage");
        }
        windows.push_back(w);
    }
    return windows;
}

std::string describe(const Error& e)
{
    if (dynamic_cast<const TooShort*>(&e) != nullptr) {
        return std::string("TooShort: ") + e.what();
    }
    if (dynamic_cast<const ZeroVariance*>(&e) != nullptr) {
        return std::string("ZeroVariance: ") + e.what();
    }
    return e.what();
}

void cross_check_measures(AnalysisRun& run)
{
    // byte and packet series are expected to land in the same H bucket
    using Key = std::tuple<int, std::size_t, std::int64_t, int>;
    std::map<Key, std::array<std::optional<double>, 2>> by_key;
    for (const auto& e : run.estimates) {
        const Key key{class_id(e.cls), e.window, e.interval_ms, static_cast<int>(e.estimate.method)};
        by_key[key][e.measure == Measure::Bytes ? 0 : 1] = e.estimate.h;
    }
    for (const auto& [key, hs] : by_key) {
        if (hs[0] && hs[1] && bucket_h(*hs[0]) != bucket_h(*hs[1])) {
            const auto& [cls, window, interval, method] = key;
            run.warnings.push_back("class " + std::to_string(cls) + " window " +
                                   format_timestamp(run.windows[window].start) + " interval " +
                                   std::to_string(interval) + "ms " +
                                   std::string(to_string(static_cast<EstimatorMethod>(method))) +
                                   ": bytes and packets estimates fall in different H buckets");
        }
    }
}

}  // namespace

AnalysisRun run_analysis(std::vector<PacketRecord> records, const IngestStats& stats, const RuleSet& rules,
                         const AnalysisConfig& config)
{
    if (records.empty() || !stats.first_ts || !stats.last_ts) {
        throw NoData("capture contains no IP packets");
    }
    for (const auto interval : config.intervals_ms) {
        if (interval <= 0) {
            throw std::invalid_argument("intervals must be positive");
        }
    }
    if (config.sample_seconds <= 0) {
        throw std::invalid_argument("sample length must be positive");
    }

    AnalysisRun run;
    run.config = config;
    std::sort(run.config.intervals_ms.begin(), run.config.intervals_ms.end());
    run.config.intervals_ms.erase(std::unique(run.config.intervals_ms.begin(), run.config.intervals_ms.end()),
                                  run.config.intervals_ms.end());
    run.rules_version = rules.version;
    run.ingest = stats;
    run.bucket_method = preferred_bucket_method(run.config);
    run.bucket_measure = preferred_bucket_measure(run.config);

    std::stable_sort(records.begin(), records.end(),
                     [](const PacketRecord& a, const PacketRecord& b) { return a.ts < b.ts; });
    ClassifiedStream classified = classify_stream(records, rules);
    run.counters = classified.counters;
    records.clear();
    records.shrink_to_fit();

    run.windows = plan_windows(stats, run.config, run.warnings);

    // fixed iteration order keeps the output reproducible
    std::vector<EstimatorMethod> methods;
    for (const auto m : all_methods) {
        if (std::find(run.config.methods.begin(), run.config.methods.end(), m) != run.config.methods.end()) {
            methods.push_back(m);
        }
    }
    std::vector<Measure> measures;
    for (const auto m : {Measure::Bytes, Measure::Packets}) {
        if (std::find(run.config.measures.begin(), run.config.measures.end(), m) != run.config.measures.end()) {
            measures.push_back(m);
        }
    }

    for (const auto cls : all_traffic_classes) {
        const auto& recs = classified.records[class_index(cls)];
        for (std::size_t wi = 0; wi < run.windows.size(); ++wi) {
            const SampleWindow& w = run.windows[wi];
            if (!w.analyzed) {
                continue;
            }
            const auto lo = std::lower_bound(recs.begin(), recs.end(), w.series_start,
                                             [](const PacketRecord& r, Timestamp t) { return r.ts < t; });
            const auto hi = std::lower_bound(lo, recs.end(), w.series_end,
                                             [](const PacketRecord& r, Timestamp t) { return r.ts < t; });
            const std::span<const PacketRecord> slice(lo, hi);

            std::uint64_t bytes = 0;
            for (const auto& r : slice) {
                bytes += r.length;
            }

            for (const auto interval : run.config.intervals_ms) {
                for (const auto measure : measures) {
                    if (slice.empty()) {
                        run.skipped.push_back({cls, wi, interval, measure, std::nullopt, "NoData: no packets in window"});
                        continue;
                    }
                    const std::int64_t width = interval * 1000;
                    const std::int64_t covered = w.series_end.micros - w.series_start.micros;
                    const auto bins = static_cast<std::size_t>((covered + width - 1) / width);
                    BinnedSeries series = bin_series(slice, interval, measure, w.series_start, bins);
                    series.class_id = cls;
                    series.activity = w.period;

                    for (const auto method : methods) {
                        try {
                            EstimateRecord rec;
                            rec.cls = cls;
                            rec.window = wi;
                            rec.interval_ms = interval;
                            rec.measure = measure;
                            rec.bins = series.size();
                            rec.volume_bytes = bytes;
                            rec.volume_packets = slice.size();
                            rec.estimate = estimate(method, series.values);
                            run.estimates.push_back(std::move(rec));
                        } catch (const TooShort& e) {
                            run.skipped.push_back({cls, wi, interval, measure, method, describe(e)});
                        } catch (const ZeroVariance& e) {
                            run.skipped.push_back({cls, wi, interval, measure, method, describe(e)});
                        }
                    }
                }
            }
        }
    }

    cross_check_measures(run);
    build_reports(run);
    return run;
}

AnalysisRun run_analysis(std::span<const std::filesystem::path> inputs, std::optional<CaptureFormat> format,
                         const RuleSet& rules, const AnalysisConfig& config)
{
    if (inputs.empty()) {
        throw NoData("no input files");
    }
    std::vector<PacketRecord> records;
    IngestStats stats;
    for (const auto& path : inputs) {
        auto part = load_capture(path, format);
        records.insert(records.end(), part.records.begin(), part.records.end());
        stats.merge(part.stats);
    }
    return run_analysis(std::move(records), stats, rules, config);
}

}  // namespace lrd
