#include <doctest.h>

#include <sstream>
#include <string>

#include "fixtures.hpp"
#include "lrd/errors.hpp"
#include "lrd/ingest.hpp"
#include "lrd/pcap_writer.hpp"

using namespace lrd;
using lrd::testing::tcp_v4;

namespace {

// Little-endian byte sink for hand-built pcap files.
struct Bytes {
    std::string s;
    void u8(std::uint8_t v) { s.push_back(static_cast<char>(v)); }
    void le16(std::uint16_t v) { u8(v & 0xFF); u8(v >> 8); }
    void le32(std::uint32_t v) { le16(v & 0xFFFF); le16(v >> 16); }
    void be16(std::uint16_t v) { u8(v >> 8); u8(v & 0xFF); }
    void raw(std::initializer_list<int> bytes)
    {
        for (int b : bytes) u8(static_cast<std::uint8_t>(b));
    }
};

void global_header(Bytes& b, std::uint32_t magic = 0xa1b2c3d4, std::uint32_t linktype = 1)
{
    b.le32(magic);
    b.le16(2); b.le16(4);
    b.le32(0); b.le32(0);
    b.le32(65535);
    b.le32(linktype);
}

void record_header(Bytes& b, std::uint32_t sec, std::uint32_t frac, std::uint32_t incl, std::uint32_t orig)
{
    b.le32(sec); b.le32(frac); b.le32(incl); b.le32(orig);
}

// Ethernet + IPv4 (20 B) + TCP ports, TOS 0xB8 (DSCP 46).
std::string eth_ipv4_tcp(std::uint16_t sport, std::uint16_t dport, std::uint16_t total, std::uint16_t frag = 0)
{
    Bytes f;
    f.raw({0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11});
    f.be16(0x0800);
    f.raw({0x45, 0xB8});
    f.be16(total);
    f.raw({0, 0});
    f.be16(frag);
    f.raw({64, 6, 0, 0, 192, 168, 1, 10, 192, 168, 1, 20});
    f.be16(sport); f.be16(dport);
    f.raw({0, 0, 0, 0});
    return f.s;
}

IngestResult parse(const std::string& bytes)
{
    std::istringstream in(bytes);
    return parse_pcap(in);
}

}  // namespace

TEST_CASE("pcap: single Ethernet IPv4 TCP frame")
{
    Bytes b;
    global_header(b);
    const auto frame = eth_ipv4_tcp(40000, 80, 60);
    record_header(b, 1700000000, 250, static_cast<std::uint32_t>(frame.size()), 74);
    b.s += frame;

    const auto r = parse(b.s);
    REQUIRE(r.records.size() == 1);
    const auto& p = r.records[0];
    CHECK(p.ip_proto == 6);
    CHECK(p.src_port == 40000);
    CHECK(p.dst_port == 80);
    CHECK(p.length == 60);
    CHECK(p.dscp == 46);
    CHECK(p.ts == Timestamp::from_seconds(1700000000, 250));
    CHECK(p.src_addr.to_string() == "192.168.1.10");
    CHECK(r.stats.packets_parsed == 1);
    CHECK(r.stats.bytes_total == 60);
}

TEST_CASE("pcap: bad magic")
{
    Bytes b;
    global_header(b, 0x0a0b0c0d);
    CHECK_THROWS_AS(parse(b.s), BadMagic);
}

TEST_CASE("pcap: unsupported link type and truncation")
{
    Bytes b;
    global_header(b, 0xa1b2c3d4, 105);
    CHECK_THROWS_AS(parse(b.s), UnsupportedLinkType);

    Bytes t;
    global_header(t);
    record_header(t, 1, 0, 54, 54);
    t.s += "short";
    CHECK_THROWS_AS(parse(t.s), TruncatedCapture);

    CHECK_THROWS_AS(parse(std::string("\xd4\xc3\xb2", 3)), TruncatedCapture);
}

TEST_CASE("pcap: ARP frame is skipped")
{
    Bytes b;
    global_header(b);
    Bytes f;
    f.raw({0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11});
    f.be16(0x0806);
    f.s += std::string(28, '\0');
    record_header(b, 1, 0, static_cast<std::uint32_t>(f.s.size()), static_cast<std::uint32_t>(f.s.size()));
    b.s += f.s;

    const auto r = parse(b.s);
    CHECK(r.records.empty());
    CHECK(r.stats.packets_skipped_non_ip == 1);
}

TEST_CASE("pcap: nanosecond magic truncates to microseconds")
{
    Bytes b;
    global_header(b, 0xa1b23c4d);
    const auto frame = eth_ipv4_tcp(1234, 443, 40);
    record_header(b, 10, 123456789, static_cast<std::uint32_t>(frame.size()), 54);
    b.s += frame;
    const auto r = parse(b.s);
    REQUIRE(r.records.size() == 1);
    CHECK(r.records[0].ts.micros == 10'123'456);
}

TEST_CASE("pcap: later IPv4 fragments carry no ports")
{
    Bytes b;
    global_header(b);
    const auto first = eth_ipv4_tcp(40000, 80, 1500, 0x2000);  // MF set, offset 0
    const auto later = eth_ipv4_tcp(40000, 80, 500, 185);
    record_header(b, 1, 0, static_cast<std::uint32_t>(first.size()), 1514);
    b.s += first;
    record_header(b, 1, 1, static_cast<std::uint32_t>(later.size()), 514);
    b.s += later;
    const auto r = parse(b.s);
    REQUIRE(r.records.size() == 2);
    CHECK(r.records[0].dst_port == 80);
    CHECK(r.records[1].src_port == 0);
    CHECK(r.records[1].dst_port == 0);
}

TEST_CASE("pcap: IPv6 with hop-by-hop header, traffic class DSCP")
{
    Bytes ip;
    // version 6, traffic class 0x28 (DSCP 10)
    ip.raw({0x62, 0x80, 0x00, 0x00});
    ip.be16(8 + 8);  // payload: ext header + ports stub
    ip.raw({0 /* hop-by-hop */, 64});
    for (int i = 0; i < 16; ++i) ip.u8(i == 15 ? 1 : 0);
    for (int i = 0; i < 16; ++i) ip.u8(i == 15 ? 2 : 0);
    ip.raw({17 /* udp */, 0, 0, 0, 0, 0, 0, 0});
    ip.be16(5353); ip.be16(53);
    ip.raw({0, 0, 0, 0});

    Bytes b;
    global_header(b, 0xa1b2c3d4, 101);
    record_header(b, 5, 0, static_cast<std::uint32_t>(ip.s.size()), static_cast<std::uint32_t>(ip.s.size()));
    b.s += ip.s;

    const auto r = parse(b.s);
    REQUIRE(r.records.size() == 1);
    const auto& p = r.records[0];
    CHECK(p.ip_proto == 17);
    CHECK(p.dscp == 10);
    CHECK(p.length == 56);
    CHECK(p.src_port == 5353);
    CHECK(p.dst_port == 53);
    CHECK(p.dst_addr.to_string() == "::2");
}

TEST_CASE("pcap: writer output decodes identically in every variant")
{
    std::mt19937_64 rng(7);
    std::vector<PacketRecord> records;
    for (int i = 0; i < 500; ++i) records.push_back(lrd::testing::random_record(rng));

    std::vector<std::vector<PacketRecord>> decoded;
    for (const auto order : {ByteOrder::Little, ByteOrder::Big}) {
        for (const bool nanos : {false, true}) {
            for (const std::uint32_t link : {pcap::linktype_ethernet, pcap::linktype_raw}) {
                std::ostringstream out;
                PcapWriter w(out, {order, nanos, link, 65535});
                for (const auto& r : records) w.write_record(r);
                decoded.push_back(parse(out.str()).records);
            }
        }
    }
    for (const auto& d : decoded) CHECK(d == records);
}

TEST_CASE("pcap: VLAN tagged frame")
{
    const auto r = tcp_v4(3.5, 50000, 22, 100);
    const auto frame = build_ethernet_frame(r, true);
    const auto p = decode_frame(frame, pcap::linktype_ethernet, r.ts);
    REQUIRE(p.has_value());
    CHECK(*p == r);
}

TEST_CASE("packet log: parse line")
{
    const auto p = parse_packet_log_line("1700000000.000050,10.0.0.1,10.0.0.2,6,41000,22,120,0", 1);
    CHECK(p.ts.micros == 1'700'000'000'000'050);
    CHECK(p.dst_port == 22);
    CHECK(p.src_port == 41000);
    CHECK(p.length == 120);
    CHECK(p.dscp == 0);

    CHECK_THROWS_AS(parse_packet_log_line("1700000000.0,10.0.0.1,10.0.0.2,6,41000,22,120", 3), SchemaError);
    CHECK_THROWS_AS(parse_packet_log_line("1700000000.0,10.0.0.1,10.0.0.2,6,41000,22,120,64", 3), SchemaError);
    CHECK_THROWS_AS(parse_packet_log_line("1.1234567,10.0.0.1,10.0.0.2,6,1,2,120,0", 3), SchemaError);
    CHECK_THROWS_AS(parse_packet_log_line("1.0,10.0.0.1,::1,6,1,2,120,0", 3), SchemaError);
    CHECK_THROWS_AS(parse_packet_log_line("1.0,10.0.0.1,10.0.0.2,1,1,2,120,0", 3), SchemaError);
}

TEST_CASE("packet log: comments and header are ignored")
{
    std::istringstream in("# capture\n" + std::string(packet_log_header) +
                          "\n\n1.5,10.0.0.1,10.0.0.2,17,5000,53,80,0\n");
    const auto r = parse_packet_log(in);
    REQUIRE(r.records.size() == 1);
    CHECK(r.records[0].ts.micros == 1'500'000);
    CHECK(r.stats.bytes_total == 80);
}

TEST_CASE("packet log: schema error reports the line number")
{
    std::istringstream in("1.5,10.0.0.1,10.0.0.2,17,5000,53,80,0\nbad,line\n");
    try {
        parse_packet_log(in);
        FAIL("expected SchemaError");
    } catch (const SchemaError& e) {
        CHECK(std::string(e.what()).find('2') != std::string::npos);
    }
}

TEST_CASE("packet log: round trip is lossless")
{
    std::mt19937_64 rng(11);
    std::vector<PacketRecord> records;
    for (int i = 0; i < 2000; ++i) records.push_back(lrd::testing::random_record(rng));
    std::ostringstream out;
    write_packet_log(out, records);
    std::istringstream in(out.str());
    CHECK(parse_packet_log(in).records == records);
}

TEST_CASE("timestamp text form")
{
    CHECK(format_timestamp(Timestamp{1'700'000'000'000'050}) == "1700000000.000050");
    CHECK(parse_timestamp("12.5")->micros == 12'500'000);
    CHECK(parse_timestamp("12")->micros == 12'000'000);
    CHECK_FALSE(parse_timestamp("12.").has_value());
    CHECK_FALSE(parse_timestamp("-1").has_value());
}

TEST_CASE("activity periods")
{
    auto at = [](int h, int m) { return Timestamp::from_seconds(86400LL * 19000 + h * 3600 + m * 60); };
    CHECK(label_activity(at(21, 30), 0) == ActivityPeriod::Low);
    CHECK(label_activity(at(11, 0), 0) == ActivityPeriod::High);
    CHECK(label_activity(at(8, 0), 0) == ActivityPeriod::Medium);
    CHECK(label_activity(at(7, 59), 0) == ActivityPeriod::Low);
    CHECK(label_activity(at(14, 0), 0) == ActivityPeriod::Medium);
    CHECK(label_activity(at(17, 0), 0) == ActivityPeriod::High);
    CHECK(label_activity(at(20, 0), 0) == ActivityPeriod::Low);
    // 16:00 UTC is 11:00 at UTC-5.
    CHECK(label_activity(at(16, 0), -300) == ActivityPeriod::High);
    // Wraps across midnight: 23:00 UTC is 01:00 at UTC+2.
    CHECK(label_activity(at(23, 0), 120) == ActivityPeriod::Low);

    int counts[3] = {};
    for (int m = 0; m < 1440; ++m) ++counts[static_cast<int>(label_minute_of_day(m))];
    CHECK(counts[0] == 12 * 60);
    CHECK(counts[1] == 6 * 60);
    CHECK(counts[2] == 6 * 60);
}

TEST_CASE("ingest stats merge")
{
    IngestStats a;
    a.observe(tcp_v4(5, 1, 2, 100));
    IngestStats b;
    b.observe(tcp_v4(2, 1, 2, 50));
    b.packets_skipped_non_ip = 3;
    a.merge(b);
    CHECK(a.packets_parsed == 2);
    CHECK(a.bytes_total == 150);
    CHECK(a.packets_skipped_non_ip == 3);
    CHECK(a.first_ts->micros == 2'000'000);
    CHECK(a.last_ts->micros == 5'000'000);
}
