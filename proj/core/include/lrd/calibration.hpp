#pragma once

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <span>
#include <vector>

#include "lrd/estimators.hpp"

namespace lrd {

struct CalibrationRow {
    EstimatorMethod method = EstimatorMethod::VarianceTime;
    double h_true = 0.0;
    std::uint64_t seed = 0;
    double h_est = 0.0;
    double abs_err = 0.0;
};

struct CalibrationConfig {
    std::vector<double> h_grid = {0.55, 0.6, 0.7, 0.8, 0.9};
    std::size_t seeds = 20;
    std::size_t n = 65536;
    std::uint64_t base_seed = 0;
    std::vector<EstimatorMethod> methods = {all_methods.begin(), all_methods.end()};
};

/// For each h and seed index s, draws fGn with seed base_seed + s and runs
/// every method on the same series. Rows are ordered by h, seed, method.
std::vector<CalibrationRow> run_calibration(const CalibrationConfig& config);

struct CalibrationSummary {
    EstimatorMethod method = EstimatorMethod::VarianceTime;
    double h_true = 0.0;
    double mean_h = 0.0;
    double mean_abs_err = 0.0;
    std::size_t count = 0;
};

/// Per (method, h) averages, ordered by method then h.
std::vector<CalibrationSummary> summarize(std::span<const CalibrationRow> rows);

/// `method,h_true,seed,h_est,abs_err`
void write_calibration_csv(std::ostream& out, std::span<const CalibrationRow> rows);

}  // namespace lrd
