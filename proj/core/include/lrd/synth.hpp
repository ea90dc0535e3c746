#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

namespace lrd {

/// Portable Gaussian source: std::mt19937_64 (its output sequence is fixed
/// by the C++ standard) feeding a Marsaglia polar transform. Draws are
/// identical on every conforming platform, unlike std::normal_distribution.
class GaussianSource {
public:
    explicit GaussianSource(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on [0, 1) with 53 random bits.
    double uniform();
    /// Standard normal.
    double normal();

private:
    std::mt19937_64 engine_;
    std::optional<double> spare_;
};

struct SynthSpec {
    double h = 0.5;
    std::size_t n = 0;
    double sigma2 = 1.0;
    std::uint64_t seed = 0;
};

/// Exact fractional Gaussian noise by circulant embedding of the
/// autocovariance gamma(0..n) into a circulant of size 2n. Throws
/// DomainError for invalid specs and NegativeEigenvalue when an eigenvalue
/// falls below -1e-9; values in [-1e-9, 0) are clamped to zero.
std::vector<double> gen_fgn(const SynthSpec& spec);

/// n independent Normal(0, sigma2) draws. Throws DomainError for n == 0 or
/// sigma2 <= 0.
std::vector<double> gen_iid_gaussian(std::size_t n, double sigma2, std::uint64_t seed);

}  // namespace lrd
