#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lrd/classifier.hpp"
#include "lrd/ingest.hpp"
#include "lrd/packet.hpp"

namespace lrd {

enum class Measure : std::uint8_t { Bytes, Packets };

std::string_view to_string(Measure m);
std::optional<Measure> parse_measure(std::string_view s);

/// Fixed-width time series of per-bin byte or packet totals.
struct BinnedSeries {
    std::int64_t interval_ms = 0;
    Timestamp t0;
    std::vector<double> values;
    Measure measure = Measure::Bytes;
    std::optional<TrafficClass> class_id;
    std::optional<ActivityPeriod> activity;

    std::size_t size() const noexcept { return values.size(); }
};

/// Bins records by floor((ts - t0) / interval). The series runs from t0
/// through the bin holding the latest record; empty bins are zeros.
/// Throws EmptyInput for no records and std::invalid_argument when a record
/// precedes t0 or interval_ms <= 0.
BinnedSeries bin_series(std::span<const PacketRecord> records, std::int64_t interval_ms,
                        Measure measure, Timestamp t0);

/// Variant with a fixed bin count: records falling outside
/// [t0, t0 + bin_count * interval) are ignored. Used to give every class in
/// a sample window the same length. Empty input yields all-zero bins.
BinnedSeries bin_series(std::span<const PacketRecord> records, std::int64_t interval_ms,
                        Measure measure, Timestamp t0, std::size_t bin_count);

/// Non-overlapping block means at level m; trailing len % m bins dropped.
struct AggregatedSeries {
    std::size_t m = 1;
    std::size_t base_length = 0;
    std::vector<double> values;
};

/// Throws std::invalid_argument for m == 0 and BlockTooLarge for m > size.
AggregatedSeries aggregate_level(std::span<const double> series, std::size_t m);
inline AggregatedSeries aggregate_level(const BinnedSeries& series, std::size_t m)
{
    return aggregate_level(series.values, m);
}

struct MeanVar {
    double mean = 0.0;
    double variance = 0.0;  // population (1/n) form
};

/// Throws TooShort for fewer than two values.
MeanVar sample_mean_var(std::span<const double> series);

/// CSV with a `# interval_ms=..,measure=..,class=..,t0=..` comment line, an
/// optional extra comment, a `bin_index,value` header and one row per bin.
void write_series_csv(std::ostream& out, const BinnedSeries& series, std::string_view extra_comment = {});

/// Shortest round-trip decimal form of v.
std::string format_number(double v);

}  // namespace lrd
