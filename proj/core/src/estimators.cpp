#include "lrd/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "fourier.hpp"
#include "lrd/errors.hpp"
#include "lrd/regression.hpp"
#include "lrd/series.hpp"

namespace lrd {

std::string_view to_string(EstimatorMethod m)
{
    switch (m) {
    case EstimatorMethod::VarianceTime:
        return "variance_time";
    case EstimatorMethod::RescaledRange:
        return "rs";
    case EstimatorMethod::Periodogram:
        return "periodogram";
    case EstimatorMethod::Whittle:
        return "whittle";
    }
    return "?";
}

std::optional<EstimatorMethod> parse_method(std::string_view s)
{
    if (s == "vt" || s == "variance_time") {
        return EstimatorMethod::VarianceTime;
    }
    if (s == "rs") {
        return EstimatorMethod::RescaledRange;
    }
    if (s == "pgram" || s == "periodogram") {
        return EstimatorMethod::Periodogram;
    }
    if (s == "whittle") {
        return EstimatorMethod::Whittle;
    }
    return std::nullopt;
}

std::string_view to_string(EstimateWarning w)
{
    switch (w) {
    case EstimateWarning::OutOfRange:
        return "OutOfRange";
    case EstimateWarning::LowR2:
        return "LowR2";
    case EstimateWarning::BoundaryHit:
        return "BoundaryHit";
    }
    return "?";
}

bool HurstEstimate::has_warning(EstimateWarning w) const
{
    return std::find(warnings.begin(), warnings.end(), w) != warnings.end();
}

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;
constexpr double low_r2 = 0.9;

void require_length(std::span<const double> x, std::size_t required)
{
    if (x.size() < required) {
        throw TooShort(x.size(), required);
    }
}

double require_variance(std::span<const double> x)
{
    const auto mv = sample_mean_var(x);
    if (!(mv.variance > 0.0)) {
        throw ZeroVariance();
    }
    return mv.variance;
}

void flag_range(HurstEstimate& est)
{
    if (!(est.h > 0.0 && est.h < 1.0)) {
        est.warnings.push_back(EstimateWarning::OutOfRange);
    }
}

void apply_fit(HurstEstimate& est, const LinearFit& fit)
{
    est.slope = fit.slope;
    est.intercept = fit.intercept;
    est.r_squared = fit.r_squared;
    est.points_used = fit.points;
}

std::vector<std::size_t> geometric_grid(double lo, double hi, std::size_t count)
{
    std::vector<std::size_t> grid;
    if (hi < lo) {
        return grid;
    }
    const double ratio = count > 1 ? std::pow(hi / lo, 1.0 / static_cast<double>(count - 1)) : 1.0;
    double v = lo;
    for (std::size_t i = 0; i < count; ++i, v *= ratio) {
        const auto m = static_cast<std::size_t>(std::llround(v));
        if (m >= 1 && static_cast<double>(m) <= hi && (grid.empty() || grid.back() != m)) {
            grid.push_back(m);
        }
    }
    return grid;
}

}  // namespace

// ---------------------------------------------------------------------------
// autocovariance / autocorrelation

double theoretical_acov(double h, double sigma2, std::int64_t k)
{
    if (!(h > 0.0 && h < 1.0)) {
        throw DomainError("Hurst exponent must lie in (0, 1), got " + std::to_string(h));
    }
    if (!(sigma2 > 0.0)) {
        throw DomainError("variance must be positive, got " + std::to_string(sigma2));
    }
    const double kk = std::fabs(static_cast<double>(k));
    const double two_h = 2.0 * h;
    if (kk == 0.0) {
        return sigma2;
    }
    if (kk == 1.0) {
        return 0.5 * sigma2 * (std::pow(2.0, two_h) - 2.0);
    }
    // k^2h [(1 + 1/k)^2h - 2 + (1 - 1/k)^2h], written to avoid cancellation
    const double inv = 1.0 / kk;
    const double bracket = std::expm1(two_h * std::log1p(inv)) + std::expm1(two_h * std::log1p(-inv));
    return 0.5 * sigma2 * std::pow(kk, two_h) * bracket;
}

AcfProfile sample_acf(std::span<const double> series, std::size_t max_lag)
{
    const std::size_t n = series.size();
    if (max_lag == 0) {
        throw std::invalid_argument("max_lag must be >= 1");
    }
    require_length(series, max_lag + 2);
    const auto mv = sample_mean_var(series);
    if (!(mv.variance > 0.0)) {
        throw ZeroVariance();
    }

    AcfProfile acf;
    acf.r.resize(max_lag);
    const double denom = mv.variance * static_cast<double>(n);
    for (std::size_t k = 1; k <= max_lag; ++k) {
        double s = 0.0;
        for (std::size_t t = 0; t + k < n; ++t) {
            s += (series[t] - mv.mean) * (series[t + k] - mv.mean);
        }
        acf.r[k - 1] = std::clamp(s / denom, -1.0, 1.0);
    }

    const double threshold = 2.0 / std::sqrt(static_cast<double>(n));
    const std::size_t horizon = std::min<std::size_t>(10, max_lag);
    acf.slow_decay = std::all_of(acf.r.begin(), acf.r.begin() + static_cast<std::ptrdiff_t>(horizon),
                                 [&](double r) { return r > threshold; });
    return acf;
}

// ---------------------------------------------------------------------------
// variance-time

std::vector<std::size_t> default_variance_time_grid(std::size_t n)
{
    // Levels with few blocks bias var(X^(m)) low (the block means are
    // centred on the overall sample mean), which steepens the fit for
    // strongly persistent series; keep >= 100 blocks once n allows it.
    const std::size_t top = std::max(n / 100, std::min<std::size_t>(10, n / 10));
    return geometric_grid(1.0, static_cast<double>(top), 20);
}

HurstEstimate variance_time_estimate(std::span<const double> series,
                                     std::optional<std::span<const std::size_t>> m_grid)
{
    require_length(series, 100);
    require_variance(series);

    const std::vector<std::size_t> fallback = m_grid ? std::vector<std::size_t>{} : default_variance_time_grid(series.size());
    const std::span<const std::size_t> grid = m_grid ? *m_grid : std::span<const std::size_t>(fallback);

    std::vector<double> log_m;
    std::vector<double> log_var;
    for (const std::size_t m : grid) {
        if (m == 0 || series.size() / m < 2) {
            continue;
        }
        const auto agg = aggregate_level(series, m);
        const double v = sample_mean_var(agg.values).variance;
        if (v > 0.0) {
            log_m.push_back(std::log10(static_cast<double>(m)));
            log_var.push_back(std::log10(v));
        }
    }
    if (log_m.size() < 5) {
        throw TooShort(log_m.size(), 5);
    }

    const LinearFit fit = fit_line(log_m, log_var);
    HurstEstimate est;
    est.method = EstimatorMethod::VarianceTime;
    apply_fit(est, fit);
    est.beta = -fit.slope;
    est.h = 1.0 - *est.beta / 2.0;
    flag_range(est);
    if (fit.r_squared < low_r2) {
        est.warnings.push_back(EstimateWarning::LowR2);
    }
    return est;
}

// ---------------------------------------------------------------------------
// rescaled range

std::vector<std::size_t> default_rs_grid(std::size_t n)
{
    std::vector<std::size_t> grid;
    for (std::size_t b = 64; b <= n / 4; b *= 2) {
        grid.push_back(b);
    }
    if (grid.size() >= 5) {
        return grid;
    }
    grid.clear();
    for (double b = 8.0; b <= static_cast<double>(n / 4) + 1e-9; b *= std::numbers::sqrt2) {
        const auto size = static_cast<std::size_t>(std::llround(b));
        if (size <= n / 4 && (grid.empty() || grid.back() != size)) {
            grid.push_back(size);
        }
    }
    return grid;
}

namespace {

// Mean R/S over non-overlapping blocks; nullopt when every block is flat.
std::optional<double> mean_rescaled_range(std::span<const double> x, std::size_t block)
{
    const std::size_t blocks = x.size() / block;
    double total = 0.0;
    std::size_t used = 0;
    for (std::size_t b = 0; b < blocks; ++b) {
        const auto chunk = x.subspan(b * block, block);
        double mean = 0.0;
        for (const double v : chunk) {
            mean += v;
        }
        mean /= static_cast<double>(block);

        double cum = 0.0;
        double hi = 0.0;
        double lo = 0.0;
        double ss = 0.0;
        for (const double v : chunk) {
            const double d = v - mean;
            cum += d;
            hi = std::max(hi, cum);
            lo = std::min(lo, cum);
            ss += d * d;
        }
        const double sd = std::sqrt(ss / static_cast<double>(block));
        if (sd > 0.0) {
            total += (hi - lo) / sd;
            ++used;
        }
    }
    if (used == 0) {
        return std::nullopt;
    }
    return total / static_cast<double>(used);
}

}  // namespace

HurstEstimate rs_estimate(std::span<const double> series, std::optional<std::span<const std::size_t>> block_grid)
{
    require_length(series, 256);

    const std::vector<std::size_t> fallback = block_grid ? std::vector<std::size_t>{} : default_rs_grid(series.size());
    const std::span<const std::size_t> grid = block_grid ? *block_grid : std::span<const std::size_t>(fallback);

    std::vector<double> log_n;
    std::vector<double> log_rs;
    for (const std::size_t b : grid) {
        if (b < 2 || b > series.size()) {
            continue;
        }
        if (auto rs = mean_rescaled_range(series, b); rs && *rs > 0.0) {
            log_n.push_back(std::log10(static_cast<double>(b)));
            log_rs.push_back(std::log10(*rs));
        }
    }
    if (log_n.empty()) {
        throw ZeroVariance();
    }
    if (log_n.size() < 5) {
        throw TooShort(log_n.size(), 5);
    }

    const LinearFit fit = fit_line(log_n, log_rs);
    HurstEstimate est;
    est.method = EstimatorMethod::RescaledRange;
    apply_fit(est, fit);
    est.h = fit.slope;
    flag_range(est);
    if (fit.r_squared < low_r2) {
        est.warnings.push_back(EstimateWarning::LowR2);
    }
    return est;
}

// ---------------------------------------------------------------------------
// periodogram

std::vector<double> periodogram(std::span<const double> series)
{
    const std::size_t n = series.size();
    if (n < 3) {
        return {};
    }
    double mean = 0.0;
    for (const double v : series) {
        mean += v;
    }
    mean /= static_cast<double>(n);
    std::vector<double> centered(series.begin(), series.end());
    for (double& v : centered) {
        v -= mean;
    }

    const auto spectrum = detail::real_dft(centered);
    const std::size_t count = (n - 1) / 2;
    const double norm = 1.0 / (two_pi * static_cast<double>(n));
    std::vector<double> out(count);
    for (std::size_t j = 1; j <= count; ++j) {
        out[j - 1] = std::norm(spectrum[j]) * norm;
    }
    return out;
}

HurstEstimate periodogram_estimate(std::span<const double> series, double freq_fraction)
{
    require_length(series, 64);
    require_variance(series);
    if (!(freq_fraction > 0.0 && freq_fraction <= 1.0)) {
        throw std::invalid_argument("freq_fraction must be in (0, 1]");
    }

    const std::size_t n = series.size();
    const auto pgram = periodogram(series);
    const std::size_t lowest = std::min(
        pgram.size(),
        std::max<std::size_t>(5, static_cast<std::size_t>(freq_fraction * static_cast<double>(pgram.size()))));

    std::vector<double> log_freq;
    std::vector<double> log_power;
    for (std::size_t j = 1; j <= lowest; ++j) {
        const double p = pgram[j - 1];
        if (p > 0.0) {
            log_freq.push_back(std::log10(two_pi * static_cast<double>(j) / static_cast<double>(n)));
            log_power.push_back(std::log10(p));
        }
    }
    if (log_freq.size() < 5) {
        throw ZeroVariance();
    }

    const LinearFit fit = fit_line(log_freq, log_power);
    HurstEstimate est;
    est.method = EstimatorMethod::Periodogram;
    apply_fit(est, fit);
    est.h = (1.0 - fit.slope) / 2.0;
    flag_range(est);
    return est;
}

// ---------------------------------------------------------------------------
// fGn spectral density

FgnSpectrum::FgnSpectrum(double h) : h_(h), a_(2.0 * h + 1.0)
{
    if (!(h > 0.0 && h < 1.0)) {
        throw DomainError("Hurst exponent must lie in (0, 1), got " + std::to_string(h));
    }
    // For |j| >= 2, (2 pi j + l)^-a + (2 pi j - l)^-a
    //   = 2 sum_{p even} (a)_p / p! (2 pi j)^(-a-p) l^p,
    // and l / (2 pi j) <= 1/4, so 16 even terms reach double precision.
    decltype(coeff_) power_sums{};
    for (int j = 2; j <= alias_terms; ++j) {
        const double base = two_pi * j;
        const double inv_sq = 1.0 / (base * base);
        double term = std::pow(base, -a_);
        for (std::size_t q = 0; q < power_sums.size(); ++q) {
            power_sums[q] += term;
            term *= inv_sq;
        }
    }
    double rising_over_factorial = 1.0;  // (a)_p / p!
    for (std::size_t q = 0; q < coeff_.size(); ++q) {
        const double p = 2.0 * static_cast<double>(q);
        if (q > 0) {
            rising_over_factorial *= (a_ + p - 2.0) / (p - 1.0) * (a_ + p - 1.0) / p;
        }
        coeff_[q] = 2.0 * rising_over_factorial * power_sums[q];
    }
}

double FgnSpectrum::alias_sum(double lambda) const
{
    double sum = std::pow(lambda, -a_);
    sum += std::pow(two_pi + lambda, -a_) + std::pow(two_pi - lambda, -a_);

    const double l2 = lambda * lambda;
    double poly = 0.0;
    for (std::size_t q = coeff_.size(); q-- > 0;) {
        poly = poly * l2 + coeff_[q];
    }
    sum += poly;

    // sum_{j > J} f(j) ~ integral from J + 1/2 to infinity
    const double edge = two_pi * (alias_terms + 0.5);
    sum += (std::pow(edge + lambda, 1.0 - a_) + std::pow(edge - lambda, 1.0 - a_)) / (two_pi * (a_ - 1.0));
    return sum;
}

double FgnSpectrum::operator()(double lambda) const
{
    const double s = std::sin(0.5 * lambda);
    return 2.0 * s * s * alias_sum(lambda);
}

// ---------------------------------------------------------------------------
// Whittle

namespace {

constexpr double whittle_lo = 0.01;
constexpr double whittle_hi = 0.99;
constexpr double whittle_tol = 1e-4;
constexpr int whittle_max_iter = 200;

class WhittleObjective {
public:
    WhittleObjective(std::vector<double> pgram, std::size_t n) : pgram_(std::move(pgram))
    {
        freqs_.reserve(pgram_.size());
        for (std::size_t j = 1; j <= pgram_.size(); ++j) {
            freqs_.push_back(two_pi * static_cast<double>(j) / static_cast<double>(n));
        }
    }

    // Scale-profiled negative log-likelihood:
    //   m log(mean_j I_j / g_j) + sum_j log g_j
    double operator()(double h) const
    {
        const FgnSpectrum g(h);
        double ratio_sum = 0.0;
        double log_sum = 0.0;
        for (std::size_t j = 0; j < freqs_.size(); ++j) {
            const double gj = g(freqs_[j]);
            ratio_sum += pgram_[j] / gj;
            log_sum += std::log(gj);
        }
        const double m = static_cast<double>(freqs_.size());
        return m * std::log(ratio_sum / m) + log_sum;
    }

    std::size_t size() const noexcept { return freqs_.size(); }

private:
    std::vector<double> pgram_;
    std::vector<double> freqs_;
};

}  // namespace

HurstEstimate whittle_estimate(std::span<const double> series)
{
    require_length(series, 128);
    const double variance = require_variance(series);

    // standardize so the search path does not depend on the series scale
    double mean = 0.0;
    for (const double v : series) {
        mean += v;
    }
    mean /= static_cast<double>(series.size());
    const double sd = std::sqrt(variance);
    std::vector<double> z(series.begin(), series.end());
    for (double& v : z) {
        v = (v - mean) / sd;
    }

    const WhittleObjective q(periodogram(z), z.size());

    constexpr double inv_phi = 0.6180339887498949;  // (sqrt 5 - 1) / 2
    double a = whittle_lo;
    double b = whittle_hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = q(c);
    double fd = q(d);
    int iter = 0;
    while (b - a > whittle_tol) {
        if (++iter > whittle_max_iter) {
            throw NoConvergence("Whittle search did not converge in " + std::to_string(whittle_max_iter) +
                                " iterations");
        }
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = q(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = q(d);
        }
    }

    HurstEstimate est;
    est.method = EstimatorMethod::Whittle;
    est.h = 0.5 * (a + b);
    est.points_used = q.size();
    flag_range(est);
    if (est.h - whittle_lo < 2.0 * whittle_tol || whittle_hi - est.h < 2.0 * whittle_tol) {
        est.warnings.push_back(EstimateWarning::BoundaryHit);
    }
    return est;
}

HurstEstimate estimate(EstimatorMethod method, std::span<const double> series)
{
    switch (method) {
    case EstimatorMethod::VarianceTime:
        return variance_time_estimate(series);
    case EstimatorMethod::RescaledRange:
        return rs_estimate(series);
    case EstimatorMethod::Periodogram:
        return periodogram_estimate(series);
    case EstimatorMethod::Whittle:
        return whittle_estimate(series);
    }
    throw std::invalid_argument("unknown estimator");
}

// ---------------------------------------------------------------------------
// buckets

HBucket bucket_h(double h)
{
    if (h < 0.45) {
        return HBucket::Below045;
    }
    if (h < 0.5) {
        return HBucket::From045To05;
    }
    if (h < 0.7) {
        return HBucket::From05To07;
    }
    return HBucket::AtLeast07;
}

std::string_view to_string(HBucket b)
{
    switch (b) {
    case HBucket::Below045:
        return "H < 0.45";
    case HBucket::From045To05:
        return "0.45 < H < 0.5";
    case HBucket::From05To07:
        return "0.5 < H < 0.7";
    case HBucket::AtLeast07:
        return "H >= 0.7";
    }
    return "?";
}

std::string_view bucket_key(HBucket b)
{
    switch (b) {
    case HBucket::Below045:
        return "lt_0.45";
    case HBucket::From045To05:
        return "0.45_0.5";
    case HBucket::From05To07:
        return "0.5_0.7";
    case HBucket::AtLeast07:
        return "ge_0.7";
    }
    return "?";
}

}  // namespace lrd
