#include "lrd/series.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>

#include "lrd/errors.hpp"

namespace lrd {

std::string_view to_string(Measure m)
{
    return m == Measure::Bytes ? "bytes" : "packets";
}

std::optional<Measure> parse_measure(std::string_view s)
{
    if (s == "bytes") {
        return Measure::Bytes;
    }
    if (s == "packets") {
        return Measure::Packets;
    }
    return std::nullopt;
}

namespace {

std::int64_t interval_micros(std::int64_t interval_ms)
{
    if (interval_ms <= 0) {
        throw std::invalid_argument("interval must be positive");
    }
    return interval_ms * 1000;
}

}  // namespace

BinnedSeries bin_series(std::span<const PacketRecord> records, std::int64_t interval_ms, Measure measure,
                        Timestamp t0)
{
    const std::int64_t width = interval_micros(interval_ms);
    if (records.empty()) {
        throw EmptyInput();
    }
    Timestamp last = records.front().ts;
    for (const auto& r : records) {
        if (r.ts < t0) {
            throw std::invalid_argument("record precedes series origin");
        }
        last = std::max(last, r.ts);
    }
    const auto bins = static_cast<std::size_t>((last.micros - t0.micros) / width) + 1;
    return bin_series(records, interval_ms, measure, t0, bins);
}

BinnedSeries bin_series(std::span<const PacketRecord> records, std::int64_t interval_ms, Measure measure,
                        Timestamp t0, std::size_t bin_count)
{
    const std::int64_t width = interval_micros(interval_ms);
    BinnedSeries s;
    s.interval_ms = interval_ms;
    s.t0 = t0;
    s.measure = measure;
    s.values.assign(bin_count, 0.0);
    for (const auto& r : records) {
        if (r.ts < t0) {
            continue;
        }
        const auto idx = static_cast<std::size_t>((r.ts.micros - t0.micros) / width);
        if (idx >= bin_count) {
            continue;
        }
        s.values[idx] += measure == Measure::Bytes ? static_cast<double>(r.length) : 1.0;
    }
    return s;
}

AggregatedSeries aggregate_level(std::span<const double> series, std::size_t m)
{
    if (m == 0) {
        throw std::invalid_argument("aggregation level must be >= 1");
    }
    if (m > series.size()) {
        throw BlockTooLarge(m, series.size());
    }
    AggregatedSeries out;
    out.m = m;
    out.base_length = series.size();
    const std::size_t blocks = series.size() / m;
    out.values.reserve(blocks);
    const double width = static_cast<double>(m);
    for (std::size_t b = 0; b < blocks; ++b) {
        double sum = 0.0;
        for (std::size_t i = b * m; i < (b + 1) * m; ++i) {
            sum += series[i];
        }
        out.values.push_back(sum / width);
    }
    return out;
}

MeanVar sample_mean_var(std::span<const double> series)
{
    if (series.size() < 2) {
        throw TooShort(series.size(), 2);
    }
    const double n = static_cast<double>(series.size());
    double sum = 0.0;
    for (const double x : series) {
        sum += x;
    }
    const double mean = sum / n;
    double ss = 0.0;
    for (const double x : series) {
        const double d = x - mean;
        ss += d * d;
    }
    return {mean, ss / n};
}

std::string format_number(double v)
{
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc{}) {
        return "nan";
    }
    return std::string(buf, ptr);
}

void write_series_csv(std::ostream& out, const BinnedSeries& series, std::string_view extra_comment)
{
    out << "# interval_ms=" << series.interval_ms << ",measure=" << to_string(series.measure)
        << ",class=" << (series.class_id ? std::to_string(class_id(*series.class_id)) : std::string("all"))
        << ",t0=" << format_timestamp(series.t0) << '\n';
    if (!extra_comment.empty()) {
        out << "# " << extra_comment << '\n';
    }
    out << "bin_index,value\n";
    for (std::size_t i = 0; i < series.values.size(); ++i) {
        out << i << ',' << format_number(series.values[i]) << '\n';
    }
}

}  // namespace lrd
