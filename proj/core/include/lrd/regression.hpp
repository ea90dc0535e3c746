#pragma once

#include <cstddef>
#include <span>

namespace lrd {

/// Ordinary least squares fit of y = intercept + slope * x.
struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    std::size_t points = 0;
};

/// Requires at least two points with distinct x; throws std::invalid_argument
/// otherwise. r_squared is 1 when y is constant.
LinearFit fit_line(std::span<const double> x, std::span<const double> y);

}  // namespace lrd
