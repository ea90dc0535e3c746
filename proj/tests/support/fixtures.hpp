#pragma once

// Shared builders for tests and acceptance checks.

#include <array>
#include <cmath>
#include <cstdint>
#include <iterator>
#include <random>
#include <vector>

#include "lrd/packet.hpp"

namespace lrd::testing {

inline PacketRecord tcp_v4(double seconds, std::uint16_t sport, std::uint16_t dport, std::uint32_t length = 60,
                           std::uint8_t proto = ipproto::tcp)
{
    PacketRecord r;
    r.ts = Timestamp{static_cast<std::int64_t>(std::llround(seconds * 1e6))};
    r.src_addr = IpAddress::v4(10, 0, 0, 1);
    r.dst_addr = IpAddress::v4(10, 0, 0, 2);
    r.ip_proto = proto;
    r.src_port = sport;
    r.dst_port = dport;
    r.length = length;
    return r;
}

inline PacketRecord udp_v4(double seconds, std::uint16_t sport, std::uint16_t dport, std::uint32_t length = 60)
{
    return tcp_v4(seconds, sport, dport, length, ipproto::udp);
}

/// Random record satisfying is_valid(), with mixed address families and protocols.
inline PacketRecord random_record(std::mt19937_64& rng)
{
    auto pick = [&rng](std::uint64_t n) { return static_cast<std::uint64_t>(rng() % n); };
    PacketRecord r;
    r.ts = Timestamp{static_cast<std::int64_t>(1'600'000'000'000'000LL + pick(100'000'000'000ULL))};
    const bool v6 = pick(4) == 0;
    if (v6) {
        std::array<std::uint8_t, 16> a{};
        std::array<std::uint8_t, 16> b{};
        for (auto& x : a) x = static_cast<std::uint8_t>(rng());
        for (auto& x : b) x = static_cast<std::uint8_t>(rng());
        r.src_addr = IpAddress::v6(a);
        r.dst_addr = IpAddress::v6(b);
    } else {
        r.src_addr = IpAddress::v4(static_cast<std::uint8_t>(rng()), static_cast<std::uint8_t>(rng()),
                                   static_cast<std::uint8_t>(rng()), static_cast<std::uint8_t>(rng()));
        r.dst_addr = IpAddress::v4(static_cast<std::uint8_t>(rng()), static_cast<std::uint8_t>(rng()),
                                   static_cast<std::uint8_t>(rng()), static_cast<std::uint8_t>(rng()));
    }
    static constexpr std::uint8_t protos[] = {ipproto::tcp, ipproto::tcp, ipproto::udp, ipproto::udp,
                                              ipproto::icmp, ipproto::igmp, ipproto::ospf, 47, 50};
    r.ip_proto = protos[pick(std::size(protos))];
    if (carries_ports(r.ip_proto)) {
        // Bias toward low and listed ports so every class gets exercised.
        static constexpr std::uint16_t known[] = {20, 21, 22, 23, 25, 53, 67, 80, 110, 123, 143, 161, 179,
                                                  443, 514, 873, 1194, 1900, 3478, 8080, 8443};
        auto port = [&]() -> std::uint16_t {
            switch (pick(4)) {
            case 0: return static_cast<std::uint16_t>(pick(1024));
            case 1: return static_cast<std::uint16_t>(pick(10000));
            case 2: return known[pick(std::size(known))];
            default: return static_cast<std::uint16_t>(pick(65536));
            }
        };
        r.src_port = port();
        r.dst_port = port();
    }
    // Room for the port fields whenever the protocol has them.
    const std::uint32_t floor = (v6 ? 40u : 20u) + (carries_ports(r.ip_proto) ? 8u : 0u);
    r.length = floor + static_cast<std::uint32_t>(pick(1473));
    r.dscp = static_cast<std::uint8_t>(pick(64));
    return r;
}

}  // namespace lrd::testing
