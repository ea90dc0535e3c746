#include "lrd/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "lrd/series.hpp"
#include "lrd/synth.hpp"

namespace lrd {

std::vector<CalibrationRow> run_calibration(const CalibrationConfig& config)
{
    std::vector<CalibrationRow> rows;
    rows.reserve(config.h_grid.size() * config.seeds * config.methods.size());
    for (const double h : config.h_grid) {
        for (std::size_t s = 0; s < config.seeds; ++s) {
            const std::uint64_t seed = config.base_seed + s;
            const auto x = gen_fgn(SynthSpec{h, config.n, 1.0, seed});
            for (const auto method : config.methods) {
                const double est = estimate(method, x).h;
                rows.push_back({method, h, seed, est, std::fabs(est - h)});
            }
        }
    }
    return rows;
}

std::vector<CalibrationSummary> summarize(std::span<const CalibrationRow> rows)
{
    std::map<std::pair<int, double>, CalibrationSummary> acc;
    for (const auto& r : rows) {
        auto& s = acc[{static_cast<int>(r.method), r.h_true}];
        s.method = r.method;
        s.h_true = r.h_true;
        s.mean_h += r.h_est;
        s.mean_abs_err += r.abs_err;
        ++s.count;
    }
    std::vector<CalibrationSummary> out;
    for (auto& [key, s] : acc) {
        s.mean_h /= static_cast<double>(s.count);
        s.mean_abs_err /= static_cast<double>(s.count);
        out.push_back(s);
    }
    return out;
}

void write_calibration_csv(std::ostream& out, std::span<const CalibrationRow> rows)
{
    out << "method,h_true,seed,h_est,abs_err\n";
    for (const auto& r : rows) {
        out << to_string(r.method) << ',' << format_number(r.h_true) << ',' << r.seed << ','
            << format_number(r.h_est) << ',' << format_number(r.abs_err) << '\n';
    }
}

}  // namespace lrd
