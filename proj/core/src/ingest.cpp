#include "lrd/ingest.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cstdio>
#include <cstring>
#include <string>

#include "lrd/errors.hpp"

namespace lrd {

bool is_valid(const PacketRecord& r) noexcept
{
    if (r.ts.micros < 0 || r.dscp > 63) {
        return false;
    }
    if (r.src_addr.family() != r.dst_addr.family()) {
        return false;
    }
    const std::uint32_t min_len = r.src_addr.is_v4() ? 20 : 40;
    if (r.length < min_len) {
        return false;
    }
    if (!carries_ports(r.ip_proto) && (r.src_port != 0 || r.dst_port != 0)) {
        return false;
    }
    return true;
}

void IngestStats::observe(const PacketRecord& r)
{
    ++packets_parsed;
    bytes_total += r.length;
    if (!first_ts || r.ts < *first_ts) {
        first_ts = r.ts;
    }
    if (!last_ts || r.ts > *last_ts) {
        last_ts = r.ts;
    }
}

void IngestStats::merge(const IngestStats& other)
{
    packets_parsed += other.packets_parsed;
    packets_skipped_non_ip += other.packets_skipped_non_ip;
    bytes_total += other.bytes_total;
    if (other.first_ts && (!first_ts || *other.first_ts < *first_ts)) {
        first_ts = other.first_ts;
    }
    if (other.last_ts && (!last_ts || *other.last_ts > *last_ts)) {
        last_ts = other.last_ts;
    }
}

// ---------------------------------------------------------------------------
// frame decoding

namespace {

constexpr std::uint16_t ethertype_ipv4 = 0x0800;
constexpr std::uint16_t ethertype_ipv6 = 0x86DD;
constexpr std::uint16_t ethertype_vlan = 0x8100;

std::uint16_t be16(const std::uint8_t* p) { return static_cast<std::uint16_t>((p[0] << 8) | p[1]); }

void read_ports(std::span<const std::uint8_t> transport, PacketRecord& r)
{
    if (!carries_ports(r.ip_proto) || transport.size() < 4) {
        return;
    }
    r.src_port = be16(transport.data());
    r.dst_port = be16(transport.data() + 2);
}

std::optional<PacketRecord> decode_ipv4(std::span<const std::uint8_t> ip, Timestamp ts)
{
    if (ip.size() < 20 || (ip[0] >> 4) != 4) {
        return std::nullopt;
    }
    const std::size_t ihl = static_cast<std::size_t>(ip[0] & 0x0F) * 4;
    const std::uint16_t total = be16(&ip[2]);
    if (ihl < 20 || ip.size() < ihl || total < ihl) {
        return std::nullopt;
    }

    PacketRecord r;
    r.ts = ts;
    r.dscp = static_cast<std::uint8_t>(ip[1] >> 2);
    r.length = total;
    r.ip_proto = ip[9];
    r.src_addr = IpAddress::v4(std::span<const std::uint8_t, 4>(&ip[12], 4));
    r.dst_addr = IpAddress::v4(std::span<const std::uint8_t, 4>(&ip[16], 4));

    const std::uint16_t frag_offset = be16(&ip[6]) & 0x1FFF;
    if (frag_offset == 0) {
        read_ports(ip.subspan(ihl), r);
    }
    return r;
}

std::optional<PacketRecord> decode_ipv6(std::span<const std::uint8_t> ip, Timestamp ts)
{
    if (ip.size() < 40 || (ip[0] >> 4) != 6) {
        return std::nullopt;
    }
    PacketRecord r;
    r.ts = ts;
    const std::uint8_t traffic_class = static_cast<std::uint8_t>(((ip[0] & 0x0F) << 4) | (ip[1] >> 4));
    r.dscp = static_cast<std::uint8_t>(traffic_class >> 2);
    r.length = 40u + be16(&ip[4]);
    r.src_addr = IpAddress::v6(std::span<const std::uint8_t, 16>(&ip[8], 16));
    r.dst_addr = IpAddress::v6(std::span<const std::uint8_t, 16>(&ip[24], 16));

    std::uint8_t next = ip[6];
    std::size_t off = 40;
    bool later_fragment = false;
    // Walk the extension header chain to the upper-layer protocol.
    for (;;) {
        if (next == 0 || next == 43 || next == 60) {
            if (ip.size() < off + 2) {
                break;
            }
            const std::size_t len = (static_cast<std::size_t>(ip[off + 1]) + 1) * 8;
            next = ip[off];
            off += len;
        } else if (next == 44) {
            if (ip.size() < off + 8) {
                break;
            }
            later_fragment = (be16(&ip[off + 2]) >> 3) != 0;
            next = ip[off];
            off += 8;
        } else if (next == 51) {
            if (ip.size() < off + 2) {
                break;
            }
            const std::size_t len = (static_cast<std::size_t>(ip[off + 1]) + 2) * 4;
            next = ip[off];
            off += len;
        } else {
            break;
        }
    }
    r.ip_proto = next;
    if (!later_fragment && off <= ip.size()) {
        read_ports(ip.subspan(off), r);
    }
    return r;
}

std::optional<PacketRecord> decode_ip(std::span<const std::uint8_t> ip, Timestamp ts)
{
    if (ip.empty()) {
        return std::nullopt;
    }
    switch (ip[0] >> 4) {
    case 4:
        return decode_ipv4(ip, ts);
    case 6:
        return decode_ipv6(ip, ts);
    default:
        return std::nullopt;
    }
}

}  // namespace

std::optional<PacketRecord> decode_frame(std::span<const std::uint8_t> frame,
                                         std::uint32_t linktype, Timestamp ts)
{
    std::optional<PacketRecord> rec;
    if (linktype == pcap::linktype_raw) {
        rec = decode_ip(frame, ts);
    } else if (linktype == pcap::linktype_ethernet) {
        if (frame.size() < 14) {
            return std::nullopt;
        }
        std::size_t off = 12;
        std::uint16_t type = be16(&frame[off]);
        if (type == ethertype_vlan) {
            if (frame.size() < 18) {
                return std::nullopt;
            }
            off += 4;
            type = be16(&frame[off]);
        }
        off += 2;
        if (type == ethertype_ipv4) {
            rec = decode_ipv4(frame.subspan(off), ts);
        } else if (type == ethertype_ipv6) {
            rec = decode_ipv6(frame.subspan(off), ts);
        }
    }
    if (rec && !is_valid(*rec)) {
        return std::nullopt;
    }
    return rec;
}

// ---------------------------------------------------------------------------
// pcap reader

namespace {

std::uint32_t load_u32(const std::uint8_t* p, bool big_endian)
{
    if (big_endian) {
        return (std::uint32_t{p[0]} << 24) | (std::uint32_t{p[1]} << 16) | (std::uint32_t{p[2]} << 8) | p[3];
    }
    return (std::uint32_t{p[3]} << 24) | (std::uint32_t{p[2]} << 16) | (std::uint32_t{p[1]} << 8) | p[0];
}

// Upper bound on a single record body; anything larger is a corrupt header.
constexpr std::uint32_t max_record_bytes = 1u << 26;

}  // namespace

PcapReader::PcapReader(std::istream& in) : in_(in)
{
    std::array<std::uint8_t, 24> hdr{};
    in_.read(reinterpret_cast<char*>(hdr.data()), 4);
    if (in_.gcount() < 4) {
        throw TruncatedCapture("pcap global header truncated");
    }
    const std::uint32_t le = load_u32(hdr.data(), false);
    const std::uint32_t be = load_u32(hdr.data(), true);
    if (le == pcap::magic_usec || le == pcap::magic_nsec) {
        big_endian_ = false;
        nanos_ = le == pcap::magic_nsec;
    } else if (be == pcap::magic_usec || be == pcap::magic_nsec) {
        big_endian_ = true;
        nanos_ = be == pcap::magic_nsec;
    } else {
        throw BadMagic(le);
    }

    in_.read(reinterpret_cast<char*>(hdr.data() + 4), 20);
    if (in_.gcount() < 20) {
        throw TruncatedCapture("pcap global header truncated");
    }
    // low 16 bits carry the link type; upper bits may hold FCS info
    linktype_ = load_u32(&hdr[20], big_endian_) & 0xFFFF;
    if (linktype_ != pcap::linktype_ethernet && linktype_ != pcap::linktype_raw) {
        throw UnsupportedLinkType(linktype_);
    }
}

std::optional<PacketRecord> PcapReader::next()
{
    for (;;) {
        std::array<std::uint8_t, 16> rh{};
        in_.read(reinterpret_cast<char*>(rh.data()), rh.size());
        const auto got = in_.gcount();
        if (got == 0) {
            return std::nullopt;
        }
        if (got < static_cast<std::streamsize>(rh.size())) {
            throw TruncatedCapture("record header truncated after " +
                                   std::to_string(stats_.packets_parsed + stats_.packets_skipped_non_ip) +
                                   " records");
        }
        const std::uint32_t ts_sec = load_u32(&rh[0], big_endian_);
        const std::uint32_t ts_frac = load_u32(&rh[4], big_endian_);
        const std::uint32_t incl_len = load_u32(&rh[8], big_endian_);
        if (incl_len > max_record_bytes) {
            throw TruncatedCapture("record declares " + std::to_string(incl_len) + " captured bytes");
        }

        frame_.resize(incl_len);
        in_.read(reinterpret_cast<char*>(frame_.data()), incl_len);
        if (in_.gcount() < static_cast<std::streamsize>(incl_len)) {
            throw TruncatedCapture("record body shorter than declared " + std::to_string(incl_len) + " bytes");
        }

        const std::int64_t frac_us = nanos_ ? ts_frac / 1000 : ts_frac;
        const Timestamp ts = Timestamp::from_seconds(ts_sec, frac_us);
        if (auto rec = decode_frame(frame_, linktype_, ts)) {
            stats_.observe(*rec);
            return rec;
        }
        ++stats_.packets_skipped_non_ip;
    }
}

IngestResult parse_pcap(std::istream& in)
{
    PcapReader reader(in);
    IngestResult out;
    while (auto rec = reader.next()) {
        out.records.push_back(*rec);
    }
    out.stats = reader.stats();
    return out;
}

// ---------------------------------------------------------------------------
// canonical text log

namespace {

std::string_view trim(std::string_view s)
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

template <typename T>
T parse_uint(std::string_view field, std::uint64_t max, std::size_t line_no, const char* name)
{
    std::uint64_t v = 0;
    const auto* end = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(field.data(), end, v);
    if (field.empty() || ec != std::errc{} || ptr != end) {
        throw SchemaError(line_no, std::string("unparsable ") + name + " '" + std::string(field) + "'");
    }
    if (v > max) {
        throw SchemaError(line_no, std::string(name) + " " + std::to_string(v) + " out of range");
    }
    return static_cast<T>(v);
}

Timestamp parse_ts(std::string_view field, std::size_t line_no)
{
    const auto dot = field.find('.');
    const std::string_view whole = field.substr(0, dot);
    std::string_view frac = dot == std::string_view::npos ? std::string_view{} : field.substr(dot + 1);
    if (dot != std::string_view::npos && (frac.empty() || frac.size() > 6)) {
        throw SchemaError(line_no, "timestamp '" + std::string(field) + "' needs 1 to 6 fractional digits");
    }
    const auto sec = parse_uint<std::int64_t>(whole, 9'000'000'000'000ULL, line_no, "ts");
    std::int64_t us = 0;
    if (!frac.empty()) {
        us = parse_uint<std::int64_t>(frac, 999'999, line_no, "ts");
        for (std::size_t i = frac.size(); i < 6; ++i) {
            us *= 10;
        }
    }
    return Timestamp::from_seconds(sec, us);
}

}  // namespace

PacketRecord parse_packet_log_line(std::string_view line, std::size_t line_no)
{
    std::array<std::string_view, 8> f{};
    std::size_t count = 0;
    std::size_t start = 0;
    for (;;) {
        const auto comma = line.find(',', start);
        const auto piece = line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
        if (count < f.size()) {
            f[count] = trim(piece);
        }
        ++count;
        if (comma == std::string_view::npos) {
            break;
        }
        start = comma + 1;
    }
    if (count != f.size()) {
        throw SchemaError(line_no, "expected 8 fields, found " + std::to_string(count));
    }

    PacketRecord r;
    r.ts = parse_ts(f[0], line_no);
    auto src = IpAddress::parse(f[1]);
    auto dst = IpAddress::parse(f[2]);
    if (!src || !dst) {
        throw SchemaError(line_no, "unparsable address");
    }
    r.src_addr = *src;
    r.dst_addr = *dst;
    r.ip_proto = parse_uint<std::uint8_t>(f[3], 255, line_no, "ip_proto");
    r.src_port = parse_uint<std::uint16_t>(f[4], 65535, line_no, "src_port");
    r.dst_port = parse_uint<std::uint16_t>(f[5], 65535, line_no, "dst_port");
    r.length = parse_uint<std::uint32_t>(f[6], 0xFFFFFFFFULL, line_no, "length");
    r.dscp = parse_uint<std::uint8_t>(f[7], 63, line_no, "dscp");

    if (r.src_addr.family() != r.dst_addr.family()) {
        throw SchemaError(line_no, "mixed address families");
    }
    if (!is_valid(r)) {
        throw SchemaError(line_no, "record violates packet invariants (length or ports)");
    }
    return r;
}

IngestResult parse_packet_log(std::istream& in)
{
    IngestResult out;
    std::string line;
    std::size_t line_no = 0;
    bool seen_data = false;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view body = trim(line);
        if (body.empty() || body.front() == '#') {
            continue;
        }
        if (!seen_data && body == packet_log_header) {
            seen_data = true;
            continue;
        }
        seen_data = true;
        out.records.push_back(parse_packet_log_line(body, line_no));
        out.stats.observe(out.records.back());
    }
    return out;
}

std::string format_timestamp(Timestamp ts)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%lld.%06lld", static_cast<long long>(ts.micros / 1'000'000),
                  static_cast<long long>(ts.micros % 1'000'000));
    return buf;
}

std::optional<Timestamp> parse_timestamp(std::string_view text)
{
    try {
        return parse_ts(trim(text), 0);
    } catch (const SchemaError&) {
        return std::nullopt;
    }
}

std::string format_packet_log_line(const PacketRecord& r)
{
    std::string s = format_timestamp(r.ts);
    s += ',';
    s += r.src_addr.to_string();
    s += ',';
    s += r.dst_addr.to_string();
    for (const unsigned v : {unsigned{r.ip_proto}, unsigned{r.src_port}, unsigned{r.dst_port},
                             unsigned{r.length}, unsigned{r.dscp}}) {
        s += ',';
        s += std::to_string(v);
    }
    return s;
}

void write_packet_log(std::ostream& out, std::span<const PacketRecord> records, bool with_header)
{
    if (with_header) {
        out << packet_log_header << '\n';
    }
    for (const auto& r : records) {
        out << format_packet_log_line(r) << '\n';
    }
}

// ---------------------------------------------------------------------------
// activity periods

std::string_view to_string(ActivityPeriod p)
{
    switch (p) {
    case ActivityPeriod::Low:
        return "Low";
    case ActivityPeriod::Medium:
        return "Medium";
    case ActivityPeriod::High:
        return "High";
    }
    return "?";
}

ActivityPeriod label_minute_of_day(int minute_of_day)
{
    const int hour = minute_of_day / 60;
    if (hour >= 20 || hour < 8) {
        return ActivityPeriod::Low;
    }
    if ((hour >= 10 && hour < 13) || (hour >= 17 && hour < 20)) {
        return ActivityPeriod::High;
    }
    // 08-10 and 15-17, plus the unassigned 13-15 gap
    return ActivityPeriod::Medium;
}

ActivityPeriod label_activity(Timestamp ts, int utc_offset_minutes)
{
    std::int64_t secs = ts.micros / 1'000'000;
    if (ts.micros % 1'000'000 < 0) {
        --secs;
    }
    const std::int64_t local_minutes = secs / 60 - (secs % 60 < 0 ? 1 : 0) + utc_offset_minutes;
    std::int64_t minute = local_minutes % 1440;
    if (minute < 0) {
        minute += 1440;
    }
    return label_minute_of_day(static_cast<int>(minute));
}

}  // namespace lrd
