#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace lrd {

/// IPv4 or IPv6 address held by value. IPv4 occupies the first four bytes.
class IpAddress {
public:
    enum class Family : std::uint8_t { V4 = 4, V6 = 6 };

    IpAddress() = default;

    static IpAddress v4(std::span<const std::uint8_t, 4> bytes);
    static IpAddress v4(std::uint8_t a, std::uint8_t b, std::uint8_t c, std::uint8_t d);
    static IpAddress v6(std::span<const std::uint8_t, 16> bytes);

    /// Accepts dotted-quad or RFC 4291 text; nullopt when neither parses.
    static std::optional<IpAddress> parse(std::string_view text);

    Family family() const noexcept { return family_; }
    bool is_v4() const noexcept { return family_ == Family::V4; }
    std::span<const std::uint8_t> bytes() const noexcept
    {
        return {bytes_.data(), is_v4() ? std::size_t{4} : std::size_t{16}};
    }

    /// Canonical text form (inet_ntop), stable for round-trips.
    std::string to_string() const;

    friend auto operator<=>(const IpAddress&, const IpAddress&) = default;

private:
    Family family_ = Family::V4;
    std::array<std::uint8_t, 16> bytes_{};
};

}  // namespace lrd
