#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lrd/packet.hpp"

namespace lrd {

struct IngestStats {
    std::uint64_t packets_parsed = 0;
    // Frames that were not IPv4/IPv6 or could not be decoded as such.
    std::uint64_t packets_skipped_non_ip = 0;
    std::uint64_t bytes_total = 0;
    std::optional<Timestamp> first_ts;
    std::optional<Timestamp> last_ts;

    void observe(const PacketRecord& r);
    void merge(const IngestStats& other);
};

struct IngestResult {
    std::vector<PacketRecord> records;
    IngestStats stats;
};

namespace pcap {
inline constexpr std::uint32_t magic_usec = 0xa1b2c3d4;
inline constexpr std::uint32_t magic_usec_swapped = 0xd4c3b2a1;
inline constexpr std::uint32_t magic_nsec = 0xa1b23c4d;
inline constexpr std::uint32_t magic_nsec_swapped = 0x4d3cb2a1;
inline constexpr std::uint32_t linktype_ethernet = 1;
inline constexpr std::uint32_t linktype_raw = 101;
}  // namespace pcap

/// Sequential reader over a classic libpcap file. Records are produced in file
/// order; frames that do not carry IP are counted and skipped.
class PcapReader {
public:
    /// Reads and validates the global header. Throws BadMagic,
    /// UnsupportedLinkType or TruncatedCapture.
    explicit PcapReader(std::istream& in);

    /// Next IP packet, or nullopt at a clean end of file. Throws
    /// TruncatedCapture when a record is cut short.
    std::optional<PacketRecord> next();

    const IngestStats& stats() const noexcept { return stats_; }
    std::uint32_t linktype() const noexcept { return linktype_; }
    bool nanosecond_resolution() const noexcept { return nanos_; }

private:
    std::istream& in_;
    bool big_endian_ = false;
    bool nanos_ = false;
    std::uint32_t linktype_ = 0;
    IngestStats stats_;
    std::vector<std::uint8_t> frame_;
};

IngestResult parse_pcap(std::istream& in);

/// Decodes one link-layer frame. nullopt when the frame is not an IP packet
/// or its IP header is malformed.
std::optional<PacketRecord> decode_frame(std::span<const std::uint8_t> frame,
                                         std::uint32_t linktype, Timestamp ts);

// ---- canonical packet log ----

inline constexpr std::string_view packet_log_header =
    "ts,src_addr,dst_addr,ip_proto,src_port,dst_port,length,dscp";

/// Parses one data line. Throws SchemaError tagged with line_no.
PacketRecord parse_packet_log_line(std::string_view line, std::size_t line_no);

/// Reads the canonical text log. Blank and '#' lines are ignored, as is a
/// header line matching packet_log_header.
IngestResult parse_packet_log(std::istream& in);

/// Decimal seconds with exactly six fractional digits.
std::string format_timestamp(Timestamp ts);
/// Inverse of format_timestamp; accepts 0 to 6 fractional digits.
std::optional<Timestamp> parse_timestamp(std::string_view text);
std::string format_packet_log_line(const PacketRecord& r);
void write_packet_log(std::ostream& out, std::span<const PacketRecord> records,
                      bool with_header = true);

// ---- activity periods ----

enum class ActivityPeriod : std::uint8_t { Low, Medium, High };

std::string_view to_string(ActivityPeriod p);

/// Maps the local hour of `ts` (UTC shifted by utc_offset_minutes) to the
/// capture site's activity period. Windows are half-open [start, end):
///   Low    20:00-08:00
///   Medium 08:00-10:00, 13:00-17:00
///   High   10:00-13:00, 17:00-20:00
/// 13:00-15:00 has no label at the source and is treated as Medium.
ActivityPeriod label_activity(Timestamp ts, int utc_offset_minutes);
ActivityPeriod label_minute_of_day(int minute_of_day);

}  // namespace lrd
