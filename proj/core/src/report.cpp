#include "lrd/report.hpp"

#include <cstdio>
#include <stdexcept>

#include "lrd/errors.hpp"

namespace lrd {

Percent Percent::from_ratio(std::uint64_t num, std::uint64_t den, int decimals)
{
    if (den == 0) {
        throw std::invalid_argument("percentage of an empty total");
    }
    if (decimals < 0 || decimals > 2) {
        throw std::invalid_argument("percent decimals must be 0..2");
    }
    std::int64_t units = 100;
    for (int i = 0; i < decimals; ++i) {
        units *= 10;
    }
    // round(units * num / den) half-up, in exact integer arithmetic
    __extension__ using u128 = unsigned __int128;
    const u128 scaled = static_cast<u128>(num) * static_cast<u128>(units) * 2 + den;
    const auto rounded = static_cast<std::int64_t>(scaled / (static_cast<u128>(den) * 2));
    std::int64_t to_hundredths = 1;
    for (int i = decimals; i < 2; ++i) {
        to_hundredths *= 10;
    }
    return Percent{rounded * to_hundredths};
}

std::string Percent::to_string(int decimals) const
{
    char buf[32];
    switch (decimals) {
    case 0:
        std::snprintf(buf, sizeof buf, "%lld", static_cast<long long>((hundredths + 50) / 100));
        break;
    case 1: {
        const long long tenths = (hundredths + 5) / 10;
        std::snprintf(buf, sizeof buf, "%lld.%lld", tenths / 10, tenths % 10);
        break;
    }
    default:
        std::snprintf(buf, sizeof buf, "%lld.%02lld", static_cast<long long>(hundredths / 100),
                      static_cast<long long>(hundredths % 100));
        break;
    }
    return buf;
}

std::string format_percent(const std::optional<Percent>& p, int decimals)
{
    return p ? p->to_string(decimals) : std::string("n/a");
}

// ---------------------------------------------------------------------------

VolumeRow VolumeReport::totals() const
{
    VolumeRow t;
    for (const auto& row : rows) {
        t.bytes_pct.hundredths += row.bytes_pct.hundredths;
        t.packets_pct.hundredths += row.packets_pct.hundredths;
    }
    return t;
}

VolumeReport volume_report(const ClassCounters& counters)
{
    VolumeReport r;
    r.counters = counters;
    for (const auto& c : counters) {
        r.total_bytes += c.bytes;
        r.total_packets += c.packets;
    }
    if (r.total_bytes == 0 || r.total_packets == 0) {
        throw NoData("no traffic to report");
    }
    for (std::size_t i = 0; i < counters.size(); ++i) {
        r.rows[i].bytes_pct = Percent::from_ratio(counters[i].bytes, r.total_bytes, volume_decimals);
        r.rows[i].packets_pct = Percent::from_ratio(counters[i].packets, r.total_packets, volume_decimals);
    }
    return r;
}

// ---------------------------------------------------------------------------

namespace {

template <std::size_t N, typename BucketOf>
void fill_shares(std::span<const SampleEstimate> group, BucketOf bucket_of, std::size_t& count,
                 std::array<Percent, N>& sample_pct, std::optional<std::array<Percent, N>>& volume_pct)
{
    std::array<std::uint64_t, N> n_in{};
    std::array<std::uint64_t, N> bytes_in{};
    std::uint64_t bytes_total = 0;
    for (const auto& s : group) {
        bytes_total += s.volume_bytes;
        if (auto idx = bucket_of(s.h)) {
            ++n_in[*idx];
            bytes_in[*idx] += s.volume_bytes;
        }
    }
    count = group.size();
    for (std::size_t b = 0; b < N; ++b) {
        sample_pct[b] = Percent::from_ratio(n_in[b], group.size(), distribution_decimals);
    }
    if (bytes_total > 0) {
        volume_pct.emplace();
        for (std::size_t b = 0; b < N; ++b) {
            (*volume_pct)[b] = Percent::from_ratio(bytes_in[b], bytes_total, distribution_decimals);
        }
    }
}

}  // namespace

HurstDistributionReport hurst_distribution_report(std::span<const SampleEstimate> samples)
{
    if (samples.empty()) {
        throw NoData("no Hurst estimates to distribute");
    }
    HurstDistributionReport report;
    for (const auto cls : all_traffic_classes) {
        std::vector<SampleEstimate> group;
        for (const auto& s : samples) {
            if (s.cls == cls) {
                group.push_back(s);
            }
        }
        if (group.empty()) {
            continue;
        }
        BucketShares shares;
        fill_shares<4>(group, [](double h) { return std::optional<std::size_t>(static_cast<std::size_t>(bucket_h(h))); },
                       shares.samples, shares.sample_pct, shares.volume_pct);
        report.rows[class_index(cls)] = shares;
    }
    return report;
}

ActivityReport activity_report(std::span<const SampleEstimate> samples)
{
    if (samples.empty()) {
        throw NoData("no Hurst estimates to group by activity");
    }
    ActivityReport report;
    for (std::size_t p = 0; p < all_periods.size(); ++p) {
        std::vector<SampleEstimate> group;
        for (const auto& s : samples) {
            if (s.period == all_periods[p]) {
                group.push_back(s);
            }
        }
        if (group.empty()) {
            continue;
        }
        ActivityShares shares;
        fill_shares<2>(group,
                       [](double h) -> std::optional<std::size_t> {
                           switch (bucket_h(h)) {
                           case HBucket::From05To07:
                               return 0;
                           case HBucket::AtLeast07:
                               return 1;
                           default:
                               return std::nullopt;
                           }
                       },
                       shares.samples, shares.sample_pct, shares.volume_pct);
        report.rows[p] = shares;
    }
    return report;
}

// ---------------------------------------------------------------------------

namespace {

std::string pad(std::string s, std::size_t width)
{
    if (s.size() < width) {
        s.insert(0, width - s.size(), ' ');
    }
    return s;
}

}  // namespace

std::string render_volume_table(const VolumeReport& r)
{
    std::string out = "Traffic volume per class\n";
    out += "Class  Bytes (%)  Packets (%)\n";
    for (const auto cls : all_traffic_classes) {
        const auto& row = r.rows[class_index(cls)];
        out += pad(std::to_string(class_id(cls)), 5) + pad(row.bytes_pct.to_string(volume_decimals), 11) +
               pad(row.packets_pct.to_string(volume_decimals), 13) + "\n";
    }
    const auto t = r.totals();
    out += "Total" + pad(t.bytes_pct.to_string(volume_decimals), 11) +
           pad(t.packets_pct.to_string(volume_decimals), 13) + "\n";
    return out;
}

std::string render_distribution_table(const HurstDistributionReport& r)
{
    std::string out = "Samples and traffic volume per H bucket (%)\n";
    out += "Class  Samples";
    std::string cols;
    for (const auto b : all_buckets) {
        cols += pad(std::string(to_string(b)), 16);
    }
    out += cols + "  |" + cols + "\n";
    out += "             " + pad("sample share", 64) + "  |" + pad("volume share", 64) + "\n";
    for (const auto cls : all_traffic_classes) {
        const auto& row = r.rows[class_index(cls)];
        out += pad(std::to_string(class_id(cls)), 5);
        if (!row) {
            out += pad("0", 9);
            for (int i = 0; i < 4; ++i) out += pad("n/a", 16);
            out += "  |";
            for (int i = 0; i < 4; ++i) out += pad("n/a", 16);
            out += "\n";
            continue;
        }
        out += pad(std::to_string(row->samples), 9);
        for (const auto& p : row->sample_pct) out += pad(p.to_string(distribution_decimals), 16);
        out += "  |";
        for (std::size_t i = 0; i < 4; ++i) {
            out += pad(row->volume_pct ? (*row->volume_pct)[i].to_string(distribution_decimals) : "n/a", 16);
        }
        out += "\n";
    }
    return out;
}

std::string render_activity_table(const ActivityReport& r)
{
    std::string out = "Samples and traffic volume with H > 0.5 per activity period (%)\n";
    out += "Period   Samples";
    std::string cols;
    for (const auto b : persistent_buckets) {
        cols += pad(std::string(to_string(b)), 16);
    }
    out += cols + "  |" + cols + "\n";
    for (std::size_t p = 0; p < all_periods.size(); ++p) {
        const auto& row = r.rows[p];
        std::string label(to_string(all_periods[p]));
        label.resize(8, ' ');
        out += label;
        if (!row) {
            out += pad("0", 8) + pad("n/a", 16) + pad("n/a", 16) + "  |" + pad("n/a", 16) + pad("n/a", 16) + "\n";
            continue;
        }
        out += pad(std::to_string(row->samples), 8);
        for (const auto& pc : row->sample_pct) out += pad(pc.to_string(distribution_decimals), 16);
        out += "  |";
        for (std::size_t i = 0; i < 2; ++i) {
            out += pad(row->volume_pct ? (*row->volume_pct)[i].to_string(distribution_decimals) : "n/a", 16);
        }
        out += "\n";
    }
    out += "note: 13:00-15:00 local time has no source label and is counted as Medium\n";
    return out;
}

}  // namespace lrd
