#include "fourier.hpp"

#include <fftw3.h>

#include <algorithm>
#include <memory>
#include <mutex>
#include <new>

namespace lrd::detail {

namespace {

// fftw planner calls are not thread-safe; execution is.
std::mutex& planner_mutex()
{
    static std::mutex m;
    return m;
}

struct FftwFree {
    void operator()(void* p) const noexcept { fftw_free(p); }
};

template <typename T>
std::unique_ptr<T[], FftwFree> fftw_buffer(std::size_t n)
{
    // fftw_malloc alignment keeps the chosen codelets, and therefore the
    // rounding, identical from run to run.
    auto* p = static_cast<T*>(fftw_malloc(sizeof(T) * std::max<std::size_t>(n, 1)));
    if (p == nullptr) {
        throw std::bad_alloc();
    }
    return std::unique_ptr<T[], FftwFree>(p);
}

class Plan {
public:
    explicit Plan(fftw_plan p) : plan_(p) {}
    ~Plan()
    {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(plan_);
    }
    Plan(const Plan&) = delete;
    Plan& operator=(const Plan&) = delete;
    void execute() const { fftw_execute(plan_); }

private:
    fftw_plan plan_;
};

}  // namespace

std::vector<std::complex<double>> real_dft(std::span<const double> x)
{
    const std::size_t n = x.size();
    if (n == 0) {
        return {};
    }
    auto in = fftw_buffer<double>(n);
    auto out = fftw_buffer<fftw_complex>(n / 2 + 1);
    fftw_plan raw;
    {
        std::lock_guard lock(planner_mutex());
        raw = fftw_plan_dft_r2c_1d(static_cast<int>(n), in.get(), out.get(), FFTW_ESTIMATE);
    }
    Plan plan(raw);
    std::copy(x.begin(), x.end(), in.get());
    plan.execute();

    std::vector<std::complex<double>> result(n / 2 + 1);
    for (std::size_t k = 0; k < result.size(); ++k) {
        result[k] = {out[k][0], out[k][1]};
    }
    return result;
}

std::vector<std::complex<double>> complex_dft(std::span<const std::complex<double>> x, int sign)
{
    const std::size_t n = x.size();
    if (n == 0) {
        return {};
    }
    auto in = fftw_buffer<fftw_complex>(n);
    auto out = fftw_buffer<fftw_complex>(n);
    fftw_plan raw;
    {
        std::lock_guard lock(planner_mutex());
        raw = fftw_plan_dft_1d(static_cast<int>(n), in.get(), out.get(), sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD,
                               FFTW_ESTIMATE);
    }
    Plan plan(raw);
    for (std::size_t k = 0; k < n; ++k) {
        in[k][0] = x[k].real();
        in[k][1] = x[k].imag();
    }
    plan.execute();

    std::vector<std::complex<double>> result(n);
    for (std::size_t k = 0; k < n; ++k) {
        result[k] = {out[k][0], out[k][1]};
    }
    return result;
}

}  // namespace lrd::detail
