#pragma once

#include <cstdint>
#include <ostream>
#include <span>
#include <vector>

#include "lrd/packet.hpp"

namespace lrd {

enum class ByteOrder { Little, Big };

/// Writes classic pcap files. Used to build fixtures and synthetic captures.
class PcapWriter {
public:
    struct Options {
        ByteOrder order = ByteOrder::Little;
        bool nanosecond = false;
        std::uint32_t linktype = 1;  // Ethernet
        std::uint32_t snaplen = 65535;
    };

    PcapWriter(std::ostream& out, Options opts);

    /// Appends one captured frame. orig_len defaults to the frame size.
    void write_frame(Timestamp ts, std::span<const std::uint8_t> frame, std::uint32_t orig_len = 0);

    /// Synthesizes headers for `r` (Ethernet or raw IP per linktype) and
    /// writes them; only headers are captured, orig_len covers r.length.
    void write_record(const PacketRecord& r);

private:
    void put32(std::uint32_t v);
    void put16(std::uint16_t v);

    std::ostream& out_;
    Options opts_;
};

/// IPv4/IPv6 header plus an 8-byte transport stub (ports for TCP/UDP),
/// with the total-length field taken from r.length.
std::vector<std::uint8_t> build_ip_packet(const PacketRecord& r);

/// Ethernet II frame wrapping build_ip_packet(r); optional 802.1Q tag.
std::vector<std::uint8_t> build_ethernet_frame(const PacketRecord& r, bool vlan_tag = false);

}  // namespace lrd
