#include "lrd/ip_address.hpp"

#include <arpa/inet.h>

#include <algorithm>

namespace lrd {

IpAddress IpAddress::v4(std::span<const std::uint8_t, 4> bytes)
{
    IpAddress a;
    a.family_ = Family::V4;
    std::copy(bytes.begin(), bytes.end(), a.bytes_.begin());
    return a;
}

IpAddress IpAddress::v4(std::uint8_t a, std::uint8_t b, std::uint8_t c, std::uint8_t d)
{
    const std::array<std::uint8_t, 4> raw{a, b, c, d};
    return v4(std::span<const std::uint8_t, 4>(raw));
}

IpAddress IpAddress::v6(std::span<const std::uint8_t, 16> bytes)
{
    IpAddress a;
    a.family_ = Family::V6;
    std::copy(bytes.begin(), bytes.end(), a.bytes_.begin());
    return a;
}

std::optional<IpAddress> IpAddress::parse(std::string_view text)
{
    // inet_pton needs a terminated buffer
    if (text.empty() || text.size() >= INET6_ADDRSTRLEN) {
        return std::nullopt;
    }
    char buf[INET6_ADDRSTRLEN] = {};
    std::copy(text.begin(), text.end(), buf);

    std::array<std::uint8_t, 16> raw{};
    if (inet_pton(AF_INET, buf, raw.data()) == 1) {
        return v4(std::span<const std::uint8_t, 4>(raw.data(), 4));
    }
    if (inet_pton(AF_INET6, buf, raw.data()) == 1) {
        return v6(std::span<const std::uint8_t, 16>(raw));
    }
    return std::nullopt;
}

std::string IpAddress::to_string() const
{
    char buf[INET6_ADDRSTRLEN] = {};
    const int af = is_v4() ? AF_INET : AF_INET6;
    if (inet_ntop(af, bytes_.data(), buf, sizeof buf) == nullptr) {
        return {};
    }
    return buf;
}

}  // namespace lrd
