#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lrd/classifier.hpp"
#include "lrd/estimators.hpp"
#include "lrd/ingest.hpp"
#include "lrd/report.hpp"
#include "lrd/series.hpp"

namespace lrd {

enum class CaptureFormat { Pcap, Log };

/// Reads a capture file. Without an explicit format, files starting with a
/// pcap magic are read as pcap and everything else as the text log. Errors
/// are rethrown as lrd::Error prefixed with the file name.
IngestResult load_capture(const std::filesystem::path& path, std::optional<CaptureFormat> format = std::nullopt);

struct AnalysisConfig {
    std::vector<std::int64_t> intervals_ms = {100, 500, 1000, 10000};
    std::vector<EstimatorMethod> methods = {all_methods.begin(), all_methods.end()};
    std::vector<Measure> measures = {Measure::Bytes, Measure::Packets};
    int tz_offset_minutes = 0;
    // Samples are clock-aligned windows of this length (local time).
    std::int64_t sample_seconds = 3600;
    // Edge windows with less capture coverage than this are skipped.
    std::int64_t min_coverage_seconds = 1800;
};

struct SampleWindow {
    Timestamp start;  // window bounds in UTC
    Timestamp end;
    Timestamp series_start;  // clipped to the capture span
    Timestamp series_end;
    ActivityPeriod period = ActivityPeriod::Low;
    bool analyzed = false;
};

struct EstimateRecord {
    TrafficClass cls = TrafficClass::Transient;
    std::size_t window = 0;  // index into AnalysisRun::windows
    std::int64_t interval_ms = 0;
    Measure measure = Measure::Bytes;
    std::size_t bins = 0;
    std::uint64_t volume_bytes = 0;
    std::uint64_t volume_packets = 0;
    HurstEstimate estimate;
};

struct SkippedSeries {
    TrafficClass cls = TrafficClass::Transient;
    std::size_t window = 0;
    std::int64_t interval_ms = 0;
    Measure measure = Measure::Bytes;
    std::optional<EstimatorMethod> method;  // empty when the whole series was skipped
    std::string reason;
};

struct AnalysisRun {
    AnalysisConfig config;
    std::string rules_version;
    IngestStats ingest;
    ClassCounters counters{};
    std::vector<SampleWindow> windows;
    std::vector<EstimateRecord> estimates;
    std::vector<SkippedSeries> skipped;
    std::vector<std::string> warnings;

    EstimatorMethod bucket_method = EstimatorMethod::VarianceTime;
    Measure bucket_measure = Measure::Bytes;
    VolumeReport volume;
    std::optional<HurstDistributionReport> distribution;
    std::optional<ActivityReport> activity;

    /// Estimates feeding the H-distribution and activity reports.
    std::vector<SampleEstimate> bucket_samples() const;
};

/// Runs the whole pipeline from records to reports. Records need not be sorted.
/// Throws NoData for an empty capture; degenerate series are recorded in
/// `skipped` rather than failing the run.
AnalysisRun run_analysis(std::vector<PacketRecord> records, const IngestStats& stats, const RuleSet& rules,
                         const AnalysisConfig& config);

AnalysisRun run_analysis(std::span<const std::filesystem::path> inputs, std::optional<CaptureFormat> format,
                         const RuleSet& rules, const AnalysisConfig& config);

/// Selects the bucketing estimator and measure from the configured lists:
/// variance-time and bytes when present, otherwise the first configured.
EstimatorMethod preferred_bucket_method(const AnalysisConfig& config);
Measure preferred_bucket_measure(const AnalysisConfig& config);

/// Rebuilds the three reports from counters and estimates.
void build_reports(AnalysisRun& run);

}  // namespace lrd
