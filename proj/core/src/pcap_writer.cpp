#include "lrd/pcap_writer.hpp"

#include <algorithm>
#include <stdexcept>

#include "lrd/ingest.hpp"

namespace lrd {

namespace {

void push16(std::vector<std::uint8_t>& v, std::uint16_t x)
{
    v.push_back(static_cast<std::uint8_t>(x >> 8));
    v.push_back(static_cast<std::uint8_t>(x & 0xFF));
}

std::uint16_t ipv4_checksum(std::span<const std::uint8_t> hdr)
{
    std::uint32_t sum = 0;
    for (std::size_t i = 0; i + 1 < hdr.size(); i += 2) {
        sum += static_cast<std::uint32_t>((hdr[i] << 8) | hdr[i + 1]);
    }
    while (sum >> 16) {
        sum = (sum & 0xFFFF) + (sum >> 16);
    }
    return static_cast<std::uint16_t>(~sum);
}

}  // namespace

std::vector<std::uint8_t> build_ip_packet(const PacketRecord& r)
{
    std::vector<std::uint8_t> p;
    std::size_t header = 0;
    if (r.src_addr.is_v4()) {
        if (r.length > 0xFFFF) {
            throw std::invalid_argument("IPv4 length exceeds 65535");
        }
        header = 20;
        p.push_back(0x45);
        p.push_back(static_cast<std::uint8_t>(r.dscp << 2));
        push16(p, static_cast<std::uint16_t>(r.length));
        push16(p, 0);       // id
        push16(p, 0x4000);  // DF, offset 0
        p.push_back(64);
        p.push_back(r.ip_proto);
        push16(p, 0);
        auto s = r.src_addr.bytes();
        auto d = r.dst_addr.bytes();
        p.insert(p.end(), s.begin(), s.end());
        p.insert(p.end(), d.begin(), d.end());
        const std::uint16_t csum = ipv4_checksum(p);
        p[10] = static_cast<std::uint8_t>(csum >> 8);
        p[11] = static_cast<std::uint8_t>(csum & 0xFF);
    } else {
        if (r.length < 40 || r.length - 40 > 0xFFFF) {
            throw std::invalid_argument("IPv6 length out of range");
        }
        header = 40;
        const std::uint8_t tc = static_cast<std::uint8_t>(r.dscp << 2);
        p.push_back(static_cast<std::uint8_t>(0x60 | (tc >> 4)));
        p.push_back(static_cast<std::uint8_t>((tc & 0x0F) << 4));
        push16(p, 0);
        push16(p, static_cast<std::uint16_t>(r.length - 40));
        p.push_back(r.ip_proto);
        p.push_back(64);
        auto s = r.src_addr.bytes();
        auto d = r.dst_addr.bytes();
        p.insert(p.end(), s.begin(), s.end());
        p.insert(p.end(), d.begin(), d.end());
    }

    std::vector<std::uint8_t> stub;
    push16(stub, r.src_port);
    push16(stub, r.dst_port);
    stub.resize(8, 0);
    const std::size_t room = r.length > header ? r.length - header : 0;
    p.insert(p.end(), stub.begin(), stub.begin() + static_cast<std::ptrdiff_t>(std::min(room, stub.size())));
    return p;
}

std::vector<std::uint8_t> build_ethernet_frame(const PacketRecord& r, bool vlan_tag)
{
    std::vector<std::uint8_t> f = {0x02, 0, 0, 0, 0, 0x02, 0x02, 0, 0, 0, 0, 0x01};
    if (vlan_tag) {
        push16(f, 0x8100);
        push16(f, 0x0064);
    }
    push16(f, r.src_addr.is_v4() ? 0x0800 : 0x86DD);
    const auto ip = build_ip_packet(r);
    f.insert(f.end(), ip.begin(), ip.end());
    return f;
}

PcapWriter::PcapWriter(std::ostream& out, Options opts) : out_(out), opts_(opts)
{
    put32(opts_.nanosecond ? pcap::magic_nsec : pcap::magic_usec);
    put16(2);
    put16(4);
    put32(0);
    put32(0);
    put32(opts_.snaplen);
    put32(opts_.linktype);
}

void PcapWriter::put32(std::uint32_t v)
{
    char b[4];
    for (int i = 0; i < 4; ++i) {
        const int shift = opts_.order == ByteOrder::Little ? 8 * i : 8 * (3 - i);
        b[i] = static_cast<char>((v >> shift) & 0xFF);
    }
    out_.write(b, 4);
}

void PcapWriter::put16(std::uint16_t v)
{
    char b[2];
    if (opts_.order == ByteOrder::Little) {
        b[0] = static_cast<char>(v & 0xFF);
        b[1] = static_cast<char>(v >> 8);
    } else {
        b[0] = static_cast<char>(v >> 8);
        b[1] = static_cast<char>(v & 0xFF);
    }
    out_.write(b, 2);
}

void PcapWriter::write_frame(Timestamp ts, std::span<const std::uint8_t> frame, std::uint32_t orig_len)
{
    const auto secs = static_cast<std::uint32_t>(ts.micros / 1'000'000);
    const auto us = static_cast<std::uint32_t>(ts.micros % 1'000'000);
    put32(secs);
    put32(opts_.nanosecond ? us * 1000 : us);
    put32(static_cast<std::uint32_t>(frame.size()));
    put32(orig_len != 0 ? orig_len : static_cast<std::uint32_t>(frame.size()));
    out_.write(reinterpret_cast<const char*>(frame.data()), static_cast<std::streamsize>(frame.size()));
}

void PcapWriter::write_record(const PacketRecord& r)
{
    if (opts_.linktype == pcap::linktype_raw) {
        write_frame(r.ts, build_ip_packet(r), r.length);
    } else {
        write_frame(r.ts, build_ethernet_frame(r), r.length + 14);
    }
}

}  // namespace lrd
