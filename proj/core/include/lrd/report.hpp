#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lrd/classifier.hpp"
#include "lrd/estimators.hpp"
#include "lrd/ingest.hpp"

namespace lrd {

/// Percentage held as an integer count of hundredths, so rounding and
/// printing are exact and reproducible.
struct Percent {
    std::int64_t hundredths = 0;

    /// 100 * num / den rounded half-up to `decimals` places (0..2).
    static Percent from_ratio(std::uint64_t num, std::uint64_t den, int decimals);

    double value() const noexcept { return static_cast<double>(hundredths) / 100.0; }
    std::string to_string(int decimals) const;

    friend auto operator<=>(const Percent&, const Percent&) = default;
};

std::string format_percent(const std::optional<Percent>& p, int decimals);  // "n/a" when empty

// ---- traffic volume per class ----

struct VolumeRow {
    Percent bytes_pct;
    Percent packets_pct;
};

struct VolumeReport {
    std::array<VolumeRow, traffic_class_count> rows{};
    ClassCounters counters{};
    std::uint64_t total_bytes = 0;
    std::uint64_t total_packets = 0;

    /// Column sums of the rounded percentages.
    VolumeRow totals() const;
};

inline constexpr int volume_decimals = 2;

/// Throws NoData when both totals are zero.
VolumeReport volume_report(const ClassCounters& counters);

// ---- H distribution per class ----

/// One analyzed sample: the H estimate for a class series and the bytes
/// that class carried during the sample window.
struct SampleEstimate {
    TrafficClass cls = TrafficClass::Transient;
    ActivityPeriod period = ActivityPeriod::Low;
    double h = 0.0;
    std::uint64_t volume_bytes = 0;
};

inline constexpr int distribution_decimals = 1;

struct BucketShares {
    std::size_t samples = 0;
    std::array<Percent, 4> sample_pct{};
    std::optional<std::array<Percent, 4>> volume_pct;  // empty when the class carried no bytes
};

struct HurstDistributionReport {
    // Empty rows mean the class produced no samples.
    std::array<std::optional<BucketShares>, traffic_class_count> rows{};
};

/// Throws NoData for an empty sample set.
HurstDistributionReport hurst_distribution_report(std::span<const SampleEstimate> samples);

// ---- H > 0.5 share per activity period ----

struct ActivityShares {
    std::size_t samples = 0;
    std::array<Percent, 2> sample_pct{};  // [0.5, 0.7), [0.7, inf)
    std::optional<std::array<Percent, 2>> volume_pct;
};

struct ActivityReport {
    // Indexed Low, Medium, High; empty rows are rendered as n/a.
    std::array<std::optional<ActivityShares>, 3> rows{};
};

inline constexpr std::array<ActivityPeriod, 3> all_periods = {ActivityPeriod::Low, ActivityPeriod::Medium,
                                                              ActivityPeriod::High};
inline constexpr std::array<HBucket, 2> persistent_buckets = {HBucket::From05To07, HBucket::AtLeast07};

/// Throws NoData for an empty sample set.
ActivityReport activity_report(std::span<const SampleEstimate> samples);

/// Plain-text tables in the layout of the published report.
std::string render_volume_table(const VolumeReport& r);
std::string render_distribution_table(const HurstDistributionReport& r);
std::string render_activity_table(const ActivityReport& r);

}  // namespace lrd
