#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace lrd {

/// Base of every error raised by the library. Data problems (bad captures,
/// degenerate series, empty inputs) all derive from this so callers can map
/// them to one exit status.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// ---- ingest ----

class BadMagic : public Error {
public:
    explicit BadMagic(std::uint32_t magic);
    std::uint32_t magic() const noexcept { return magic_; }

private:
    std::uint32_t magic_;
};

class UnsupportedLinkType : public Error {
public:
    explicit UnsupportedLinkType(std::uint32_t linktype);
    std::uint32_t linktype() const noexcept { return linktype_; }

private:
    std::uint32_t linktype_;
};

class TruncatedCapture : public Error {
public:
    using Error::Error;
};

class SchemaError : public Error {
public:
    SchemaError(std::size_t line_no, const std::string& what);
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

// ---- rules ----

class RuleParseError : public Error {
public:
    RuleParseError(std::size_t line_no, const std::string& what);
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class OverlappingRules : public Error {
public:
    OverlappingRules(std::uint16_t port, std::string first_set, std::string second_set);
    std::uint16_t port() const noexcept { return port_; }
    const std::string& first_set() const noexcept { return first_; }
    const std::string& second_set() const noexcept { return second_; }

private:
    std::uint16_t port_;
    std::string first_;
    std::string second_;
};

// ---- series / estimators ----

class EmptyInput : public Error {
public:
    EmptyInput() : Error("no records to bin") {}
};

class BlockTooLarge : public Error {
public:
    BlockTooLarge(std::size_t m, std::size_t length);
};

class TooShort : public Error {
public:
    TooShort(std::size_t length, std::size_t required);
    std::size_t length() const noexcept { return length_; }
    std::size_t required() const noexcept { return required_; }

private:
    std::size_t length_;
    std::size_t required_;
};

class ZeroVariance : public Error {
public:
    ZeroVariance() : Error("series has zero variance") {}
};

class DomainError : public Error {
public:
    using Error::Error;
};

class NoConvergence : public Error {
public:
    using Error::Error;
};

class NegativeEigenvalue : public Error {
public:
    NegativeEigenvalue(std::size_t index, double value);
};

// ---- reports ----

class NoData : public Error {
public:
    explicit NoData(const std::string& what = "no data") : Error(what) {}
};

}  // namespace lrd
