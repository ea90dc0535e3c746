#include "lrd/classifier.hpp"

#include <charconv>
#include <map>
#include <stdexcept>

#include "lrd/errors.hpp"

namespace lrd {

TrafficClass class_from_id(int id)
{
    if (id < 1 || id > 6) {
        throw std::out_of_range("traffic class id " + std::to_string(id));
    }
    return static_cast<TrafficClass>(id);
}

// Port membership follows IANA assignments matching each class's intent.
std::string_view default_rules_text()
{
    return "# built-in rule set\n"
           "version=builtin-1\n"
           "# telnet, ssh\n"
           "interactive_tcp_ports=22,23\n"
           "# ftp-data, ftp, smtp, pop3, imap, rsync, ftps-data, ftps\n"
           "bulk_tcp_ports=20,21,25,110,143,873,989,990\n"
           "http_ports=80,443,8080,8443\n"
           "# dns, ntp, snmp, snmp-trap, bgp, ldap, syslog, dhcpv6, dhcp\n"
           "mgmt_ports=53,123,161,162,179,389,514,546,547,67,68\n"
           "# icmp, igmp, ospf\n"
           "mgmt_ip_protos=1,2,89\n"
           "# openvpn, ssdp, stun, ipsec nat-t; all other UDP below 1024 is implied\n"
           "generic_udp_ports=1194,1900,3478,4500\n";
}

const RuleSet& default_rules()
{
    static const RuleSet rules = load_ruleset(default_rules_text());
    return rules;
}

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
std::set<T> parse_number_list(std::string_view value, unsigned max, std::size_t line_no, std::string_view key)
{
    std::set<T> out;
    value = trim(value);
    if (value.empty()) {
        return out;
    }
    std::size_t start = 0;
    for (;;) {
        const auto comma = value.find(',', start);
        const auto item = trim(value.substr(start, comma == std::string_view::npos ? std::string_view::npos
                                                                                   : comma - start));
        unsigned v = 0;
        auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
        if (item.empty() || ec != std::errc{} || ptr != item.data() + item.size()) {
            throw RuleParseError(line_no, "bad number '" + std::string(item) + "' in " + std::string(key));
        }
        if (v > max) {
            throw RuleParseError(line_no, std::to_string(v) + " out of range in " + std::string(key));
        }
        out.insert(static_cast<T>(v));
        if (comma == std::string_view::npos) {
            break;
        }
        start = comma + 1;
    }
    return out;
}

struct NamedPortSet {
    std::string_view name;
    std::set<std::uint16_t> RuleSet::*member;
};

constexpr std::array<NamedPortSet, 5> port_sets = {{
    {"interactive_tcp_ports", &RuleSet::interactive_tcp_ports},
    {"bulk_tcp_ports", &RuleSet::bulk_tcp_ports},
    {"http_ports", &RuleSet::http_ports},
    {"mgmt_ports", &RuleSet::mgmt_ports},
    {"generic_udp_ports", &RuleSet::generic_udp_ports},
}};

void check_disjoint(const RuleSet& rules)
{
    std::map<std::uint16_t, std::string_view> owner;
    for (const auto& set : port_sets) {
        for (const auto port : rules.*(set.member)) {
            auto [it, inserted] = owner.emplace(port, set.name);
            if (!inserted) {
                throw OverlappingRules(port, std::string(it->second), std::string(set.name));
            }
        }
    }
}

}  // namespace

RuleSet load_ruleset(std::string_view text)
{
    RuleSet rules;
    std::set<std::string, std::less<>> seen;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto nl = text.find('\n', start);
        const auto raw = text.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start);
        start = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;

        const auto line = trim(raw);
        if (line.empty() || line.front() == '#') {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw RuleParseError(line_no, "expected key=value");
        }
        const auto key = trim(line.substr(0, eq));
        const auto value = trim(line.substr(eq + 1));
        if (!seen.emplace(key).second) {
            throw RuleParseError(line_no, "duplicate key '" + std::string(key) + "'");
        }

        if (key == "version") {
            if (value.empty()) {
                throw RuleParseError(line_no, "empty version");
            }
            rules.version = std::string(value);
        } else if (key == "mgmt_ip_protos") {
            rules.mgmt_ip_protos = parse_number_list<std::uint8_t>(value, 255, line_no, key);
        } else {
            bool known = false;
            for (const auto& set : port_sets) {
                if (key == set.name) {
                    rules.*(set.member) = parse_number_list<std::uint16_t>(value, 65535, line_no, key);
                    known = true;
                    break;
                }
            }
            if (!known) {
                throw RuleParseError(line_no, "unknown key '" + std::string(key) + "'");
            }
        }
    }
    if (!seen.empty() && !seen.contains("version")) {
        throw RuleParseError(line_no, "missing required key 'version'");
    }
    check_disjoint(rules);
    return rules;
}

std::string format_ruleset(const RuleSet& rules)
{
    auto join = [](const auto& set) {
        std::string s;
        for (const auto v : set) {
            if (!s.empty()) {
                s += ',';
            }
            s += std::to_string(static_cast<unsigned>(v));
        }
        return s;
    };
    std::string out = "version=" + rules.version + "\n";
    for (const auto& set : port_sets) {
        out += std::string(set.name) + "=" + join(rules.*(set.member)) + "\n";
    }
    out += "mgmt_ip_protos=" + join(rules.mgmt_ip_protos) + "\n";
    return out;
}

TrafficClass classify(const PacketRecord& record, const RuleSet& rules)
{
    const std::uint16_t port = service_port(record.src_port, record.dst_port);
    if (rules.mgmt_ip_protos.contains(record.ip_proto)) {
        return TrafficClass::Management;
    }
    if (carries_ports(record.ip_proto) && rules.mgmt_ports.contains(port)) {
        return TrafficClass::Management;
    }
    if (record.ip_proto == ipproto::tcp) {
        if (rules.interactive_tcp_ports.contains(port)) {
            return TrafficClass::Interactive;
        }
        if (rules.bulk_tcp_ports.contains(port)) {
            return TrafficClass::Bulk;
        }
        if (rules.http_ports.contains(port)) {
            return TrafficClass::Web;
        }
        return TrafficClass::Transient;
    }
    if (record.ip_proto == ipproto::udp) {
        if (rules.generic_udp_ports.contains(port) || port < 1024) {
            return TrafficClass::GenericUdp;
        }
        return TrafficClass::Transient;
    }
    return TrafficClass::Transient;
}

Classifier::Classifier(const RuleSet& rules)
{
    for (auto p : rules.interactive_tcp_ports) port_role_[p] = PortRole::Interactive;
    for (auto p : rules.bulk_tcp_ports) port_role_[p] = PortRole::Bulk;
    for (auto p : rules.http_ports) port_role_[p] = PortRole::Http;
    for (auto p : rules.mgmt_ports) port_role_[p] = PortRole::Mgmt;
    for (auto p : rules.generic_udp_ports) port_role_[p] = PortRole::GenericUdp;
    for (auto p : rules.mgmt_ip_protos) mgmt_proto_[p] = true;
}

TrafficClass Classifier::operator()(const PacketRecord& record) const noexcept
{
    if (mgmt_proto_[record.ip_proto]) {
        return TrafficClass::Management;
    }
    const std::uint16_t port = service_port(record.src_port, record.dst_port);
    const PortRole role = port_role_[port];
    switch (record.ip_proto) {
    case ipproto::tcp:
        switch (role) {
        case PortRole::Mgmt:
            return TrafficClass::Management;
        case PortRole::Interactive:
            return TrafficClass::Interactive;
        case PortRole::Bulk:
            return TrafficClass::Bulk;
        case PortRole::Http:
            return TrafficClass::Web;
        default:
            return TrafficClass::Transient;
        }
    case ipproto::udp:
        if (role == PortRole::Mgmt) {
            return TrafficClass::Management;
        }
        if (role == PortRole::GenericUdp || port < 1024) {
            return TrafficClass::GenericUdp;
        }
        return TrafficClass::Transient;
    default:
        return TrafficClass::Transient;
    }
}

ClassifiedStream classify_stream(std::span<const PacketRecord> records, const RuleSet& rules)
{
    const Classifier classifier(rules);
    ClassifiedStream out;
    for (const auto& r : records) {
        const auto idx = class_index(classifier(r));
        out.records[idx].push_back(r);
        out.counters[idx] += ClassVolume{1, r.length};
    }
    return out;
}

ClassCounters count_classes(std::span<const PacketRecord> records, const Classifier& classifier)
{
    ClassCounters out{};
    for (const auto& r : records) {
        out[class_index(classifier(r))] += ClassVolume{1, r.length};
    }
    return out;
}

ClassCounters merge(const ClassCounters& a, const ClassCounters& b)
{
    ClassCounters out = a;
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] += b[i];
    }
    return out;
}

}  // namespace lrd
