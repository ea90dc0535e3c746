#pragma once

#include <complex>
#include <span>
#include <vector>

namespace lrd::detail {

/// Forward DFT of a real sequence, X_k = sum_t x_t exp(-2 pi i k t / n),
/// for k = 0 .. n/2.
std::vector<std::complex<double>> real_dft(std::span<const double> x);

/// Unnormalized complex DFT. sign = -1 forward, +1 backward.
std::vector<std::complex<double>> complex_dft(std::span<const std::complex<double>> x, int sign);

}  // namespace lrd::detail
