#include "lrd/errors.hpp"

#include <cstdio>

namespace lrd {

namespace {

std::string hex32(std::uint32_t v)
{
    char buf[16];
    std::snprintf(buf, sizeof buf, "0x%08x", v);
    return buf;
}

}  // namespace

BadMagic::BadMagic(std::uint32_t magic)
    : Error("bad pcap magic " + hex32(magic)), magic_(magic)
{
}

UnsupportedLinkType::UnsupportedLinkType(std::uint32_t linktype)
    : Error("unsupported pcap link type " + std::to_string(linktype)), linktype_(linktype)
{
}

SchemaError::SchemaError(std::size_t line_no, const std::string& what)
    : Error("line " + std::to_string(line_no) + ": " + what), line_(line_no)
{
}

RuleParseError::RuleParseError(std::size_t line_no, const std::string& what)
    : Error("rules line " + std::to_string(line_no) + ": " + what), line_(line_no)
{
}

OverlappingRules::OverlappingRules(std::uint16_t port, std::string first_set, std::string second_set)
    : Error("port " + std::to_string(port) + " appears in both " + first_set + " and " + second_set),
      port_(port),
      first_(std::move(first_set)),
      second_(std::move(second_set))
{
}

BlockTooLarge::BlockTooLarge(std::size_t m, std::size_t length)
    : Error("block size " + std::to_string(m) + " exceeds series length " + std::to_string(length))
{
}

TooShort::TooShort(std::size_t length, std::size_t required)
    : Error("series of length " + std::to_string(length) + " is too short (need " +
            std::to_string(required) + ")"),
      length_(length),
      required_(required)
{
}

NegativeEigenvalue::NegativeEigenvalue(std::size_t index, double value)
    : Error("circulant embedding eigenvalue " + std::to_string(index) + " is negative (" +
            std::to_string(value) + ")")
{
}

}  // namespace lrd
