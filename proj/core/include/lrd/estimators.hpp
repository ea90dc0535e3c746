#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace lrd {

enum class EstimatorMethod : std::uint8_t { VarianceTime, RescaledRange, Periodogram, Whittle };

inline constexpr std::array<EstimatorMethod, 4> all_methods = {
    EstimatorMethod::VarianceTime, EstimatorMethod::RescaledRange, EstimatorMethod::Periodogram,
    EstimatorMethod::Whittle};

/// Long name used in JSON/CSV output: variance_time, rs, periodogram, whittle.
std::string_view to_string(EstimatorMethod m);
/// Accepts long names and the CLI abbreviations vt, rs, pgram, whittle.
std::optional<EstimatorMethod> parse_method(std::string_view s);

enum class EstimateWarning : std::uint8_t {
    OutOfRange,   // h outside (0, 1)
    LowR2,        // regression r^2 below 0.9
    BoundaryHit,  // Whittle minimum on the edge of the search interval
};

std::string_view to_string(EstimateWarning w);

struct HurstEstimate {
    EstimatorMethod method = EstimatorMethod::VarianceTime;
    double h = 0.0;
    std::optional<double> beta;  // variance-time only; h == 1 - beta / 2
    // Log-log regression diagnostics; absent for Whittle, which is not a fit.
    std::optional<double> slope;
    std::optional<double> intercept;
    std::optional<double> r_squared;
    std::size_t points_used = 0;
    std::vector<EstimateWarning> warnings;

    bool has_warning(EstimateWarning w) const;
};

// ---- second-order structure ----

/// Autocovariance of fractional Gaussian noise at lag k:
///   0.5 sigma2 (|k+1|^2h - 2|k|^2h + |k-1|^2h),   gamma(0) = sigma2.
/// Throws DomainError for h outside (0, 1) or sigma2 <= 0.
double theoretical_acov(double h, double sigma2, std::int64_t k);

struct AcfProfile {
    std::vector<double> r;  // r[i] is the autocorrelation at lag i + 1
    bool slow_decay = false;

    std::size_t max_lag() const noexcept { return r.size(); }
    double at(std::size_t lag) const { return r.at(lag - 1); }
};

/// Biased-normalization sample autocorrelation for lags 1..max_lag. The
/// slow-decay flag is set when every r(k), k <= 10, exceeds 2 / sqrt(n).
/// Throws TooShort (n < max_lag + 2) and ZeroVariance.
AcfProfile sample_acf(std::span<const double> series, std::size_t max_lag);

// ---- estimators ----

/// About 20 block sizes spaced geometrically over [1, max(n/100, min(10, n/10))],
/// so every level keeps at least 10 blocks and long series keep 100.
std::vector<std::size_t> default_variance_time_grid(std::size_t n);

/// Slope of log10 var(X^(m)) against log10 m is -beta; h = 1 - beta/2.
/// Requires n >= 100. Throws TooShort / ZeroVariance.
HurstEstimate variance_time_estimate(std::span<const double> series,
                                     std::optional<std::span<const std::size_t>> m_grid = std::nullopt);

/// Powers of two from 64 to n/4; shorter series fall back to a sqrt(2)
/// ladder starting at 8 so the fit always has at least five points.
std::vector<std::size_t> default_rs_grid(std::size_t n);

/// Rescaled-range analysis: h is the slope of log10 mean(R/S) on log10 block
/// size. Requires n >= 256.
HurstEstimate rs_estimate(std::span<const double> series,
                          std::optional<std::span<const std::size_t>> block_grid = std::nullopt);

/// I(lambda_j) = |sum_t (x_t - mean) e^{-i t lambda_j}|^2 / (2 pi n) at
/// lambda_j = 2 pi j / n for j = 1 .. floor((n - 1) / 2); element j-1.
std::vector<double> periodogram(std::span<const double> series);

/// Log-log periodogram regression over the lowest freq_fraction of the
/// Fourier frequencies (at least five); h = (1 - slope) / 2. Requires n >= 64.
HurstEstimate periodogram_estimate(std::span<const double> series, double freq_fraction = 0.1);

/// Whittle estimate against the fGn spectral density with the scale
/// profiled out; golden-section search over h in (0.01, 0.99). Requires
/// n >= 128. Throws NoConvergence after 200 iterations.
HurstEstimate whittle_estimate(std::span<const double> series);

HurstEstimate estimate(EstimatorMethod method, std::span<const double> series);

// ---- fGn spectral density ----

/// Shape of the fGn spectral density, up to an h-dependent constant:
///   g(lambda; h) = (1 - cos lambda) * sum_{j=-J..J} |lambda + 2 pi j|^(-2h-1)
/// with J = 200 plus an integral correction for |j| > J.
class FgnSpectrum {
public:
    static constexpr int alias_terms = 200;

    explicit FgnSpectrum(double h);

    double h() const noexcept { return h_; }
    /// lambda in (0, pi].
    double operator()(double lambda) const;
    /// Alias sum only, without the (1 - cos) factor.
    double alias_sum(double lambda) const;

private:
    double h_;
    double a_;  // 2h + 1
    // Even-power Taylor coefficients of the |j| >= 2 alias terms in lambda.
    std::array<double, 16> coeff_{};
};

// ---- H buckets ----

enum class HBucket : std::uint8_t { Below045, From045To05, From05To07, AtLeast07 };

inline constexpr std::array<HBucket, 4> all_buckets = {HBucket::Below045, HBucket::From045To05,
                                                       HBucket::From05To07, HBucket::AtLeast07};

/// Lower-closed buckets: (-inf, .45), [.45, .5), [.5, .7), [.7, inf).
HBucket bucket_h(double h);
/// Column label, e.g. "H < 0.45" or "0.5 < H < 0.7".
std::string_view to_string(HBucket b);
/// Machine key, e.g. "lt_0.45" or "ge_0.7".
std::string_view bucket_key(HBucket b);

}  // namespace lrd
