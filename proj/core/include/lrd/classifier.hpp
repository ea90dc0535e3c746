#pragma once

#include <array>
#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lrd/packet.hpp"

namespace lrd {

/// The six QoS-oriented traffic classes.
enum class TrafficClass : std::uint8_t {
    Interactive = 1,  // interactive TCP (telnet, ssh)
    Bulk = 2,         // loss/throughput sensitive bulk-transfer TCP
    Web = 3,          // HTTP(S)
    Management = 4,   // routing and management, TCP or UDP
    GenericUdp = 5,
    Transient = 6,    // ephemeral ports, uncovered UDP, everything else
};

inline constexpr std::size_t traffic_class_count = 6;
inline constexpr std::array<TrafficClass, traffic_class_count> all_traffic_classes = {
    TrafficClass::Interactive, TrafficClass::Bulk,       TrafficClass::Web,
    TrafficClass::Management,  TrafficClass::GenericUdp, TrafficClass::Transient};

constexpr int class_id(TrafficClass c) { return static_cast<int>(c); }
constexpr std::size_t class_index(TrafficClass c) { return static_cast<std::size_t>(c) - 1; }
TrafficClass class_from_id(int id);  // throws std::out_of_range outside 1..6

struct RuleSet {
    std::string version;
    std::set<std::uint16_t> interactive_tcp_ports;
    std::set<std::uint16_t> bulk_tcp_ports;
    std::set<std::uint16_t> http_ports;
    std::set<std::uint16_t> mgmt_ports;
    std::set<std::uint8_t> mgmt_ip_protos;
    std::set<std::uint16_t> generic_udp_ports;

    friend bool operator==(const RuleSet&, const RuleSet&) = default;
};

/// Text of the built-in rule file.
std::string_view default_rules_text();
const RuleSet& default_rules();

/// Parses `key=value` rule files. Throws RuleParseError on syntax problems,
/// unknown keys or a missing version, and OverlappingRules when a port sits
/// in two of the five port sets. A file without any keys yields an empty
/// rule set.
RuleSet load_ruleset(std::string_view text);

/// Serializes rules back into the rule file format.
std::string format_ruleset(const RuleSet& rules);

/// min(src, dst) when both ports are set, otherwise whichever is nonzero.
constexpr std::uint16_t service_port(std::uint16_t src, std::uint16_t dst)
{
    if (src != 0 && dst != 0) {
        return src < dst ? src : dst;
    }
    return src != 0 ? src : dst;
}

TrafficClass classify(const PacketRecord& record, const RuleSet& rules);

/// RuleSet compiled into flat lookup tables for the hot path.
class Classifier {
public:
    explicit Classifier(const RuleSet& rules);
    TrafficClass operator()(const PacketRecord& record) const noexcept;

private:
    enum class PortRole : std::uint8_t { None, Interactive, Bulk, Http, Mgmt, GenericUdp };
    std::array<PortRole, 65536> port_role_{};
    std::array<bool, 256> mgmt_proto_{};
};

struct ClassVolume {
    std::uint64_t packets = 0;
    std::uint64_t bytes = 0;

    ClassVolume& operator+=(const ClassVolume& o)
    {
        packets += o.packets;
        bytes += o.bytes;
        return *this;
    }
    friend bool operator==(const ClassVolume&, const ClassVolume&) = default;
};

using ClassCounters = std::array<ClassVolume, traffic_class_count>;

struct ClassifiedStream {
    std::array<std::vector<PacketRecord>, traffic_class_count> records;
    ClassCounters counters{};
};

ClassifiedStream classify_stream(std::span<const PacketRecord> records, const RuleSet& rules);

/// Counters only; merging partial results is associative.
ClassCounters count_classes(std::span<const PacketRecord> records, const Classifier& classifier);
ClassCounters merge(const ClassCounters& a, const ClassCounters& b);

}  // namespace lrd
