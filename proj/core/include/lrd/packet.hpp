#pragma once

#include <compare>
#include <cstdint>

#include "lrd/ip_address.hpp"

namespace lrd {

/// Capture timestamp: microseconds since the Unix epoch.
struct Timestamp {
    std::int64_t micros = 0;

    static constexpr Timestamp from_seconds(std::int64_t s, std::int64_t us = 0)
    {
        return Timestamp{s * 1'000'000 + us};
    }
    constexpr std::int64_t whole_seconds() const { return micros / 1'000'000; }
    constexpr double seconds() const { return static_cast<double>(micros) * 1e-6; }

    friend constexpr auto operator<=>(Timestamp, Timestamp) = default;
};

namespace ipproto {
inline constexpr std::uint8_t icmp = 1;
inline constexpr std::uint8_t igmp = 2;
inline constexpr std::uint8_t tcp = 6;
inline constexpr std::uint8_t udp = 17;
inline constexpr std::uint8_t ospf = 89;
}  // namespace ipproto

/// One observed IP packet.
struct PacketRecord {
    Timestamp ts;
    IpAddress src_addr;
    IpAddress dst_addr;
    std::uint8_t ip_proto = 0;
    std::uint16_t src_port = 0;
    std::uint16_t dst_port = 0;
    std::uint32_t length = 0;  // total IP datagram length
    std::uint8_t dscp = 0;

    friend bool operator==(const PacketRecord&, const PacketRecord&) = default;
};

inline constexpr bool carries_ports(std::uint8_t proto)
{
    return proto == ipproto::tcp || proto == ipproto::udp;
}

/// Checks the record-level invariants: non-negative time, minimum header
/// length per family, ports only on TCP/UDP, 6-bit DSCP, matching families.
bool is_valid(const PacketRecord& r) noexcept;

}  // namespace lrd
