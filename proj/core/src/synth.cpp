#include "lrd/synth.hpp"

#include <cmath>
#include <complex>
#include <string>

#include "fourier.hpp"
#include "lrd/errors.hpp"
#include "lrd/estimators.hpp"

namespace lrd {

double GaussianSource::uniform()
{
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double GaussianSource::normal()
{
    if (spare_) {
        const double v = *spare_;
        spare_.reset();
        return v;
    }
    double u = 0.0;
    double v = 0.0;
    double s = 0.0;
    do {
        u = 2.0 * uniform() - 1.0;
        v = 2.0 * uniform() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    return u * f;
}

namespace {

constexpr double eigen_clamp = 1e-9;

void check_spec(double sigma2, std::size_t n, std::size_t min_n)
{
    if (n < min_n) {
        throw DomainError("series length must be >= " + std::to_string(min_n));
    }
    if (!(sigma2 > 0.0)) {
        throw DomainError("variance must be positive");
    }
}

}  // namespace

std::vector<double> gen_fgn(const SynthSpec& spec)
{
    check_spec(spec.sigma2, spec.n, 2);
    if (!(spec.h > 0.0 && spec.h < 1.0)) {
        throw DomainError("Hurst exponent must lie in (0, 1)");
    }

    const std::size_t n = spec.n;
    const std::size_t size = 2 * n;

    // first row of the circulant: gamma(0..n), then gamma(n-1..1)
    std::vector<std::complex<double>> row(size);
    for (std::size_t k = 0; k <= n; ++k) {
        row[k] = theoretical_acov(spec.h, spec.sigma2, static_cast<std::int64_t>(k));
    }
    for (std::size_t k = n + 1; k < size; ++k) {
        row[k] = row[size - k];
    }
    const auto eig = detail::complex_dft(row, -1);

    GaussianSource rng(spec.seed);
    std::vector<std::complex<double>> w(size);
    const double inv_size = 1.0 / static_cast<double>(size);
    for (std::size_t k = 0; k < size; ++k) {
        double lambda = eig[k].real();
        if (lambda < 0.0) {
            if (lambda < -eigen_clamp) {
                throw NegativeEigenvalue(k, lambda);
            }
            lambda = 0.0;
        }
        const double scale = std::sqrt(lambda * inv_size);
        const double re = rng.normal();
        const double im = rng.normal();
        w[k] = {scale * re, scale * im};
    }

    const auto z = detail::complex_dft(w, -1);
    std::vector<double> out(n);
    for (std::size_t t = 0; t < n; ++t) {
        out[t] = z[t].real();
    }
    return out;
}

std::vector<double> gen_iid_gaussian(std::size_t n, double sigma2, std::uint64_t seed)
{
    check_spec(sigma2, n, 1);
    GaussianSource rng(seed);
    const double sd = std::sqrt(sigma2);
    std::vector<double> out(n);
    for (double& v : out) {
        v = sd * rng.normal();
    }
    return out;
}

}  // namespace lrd
