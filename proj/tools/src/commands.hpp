#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lrd/analysis.hpp"
#include "lrd/estimators.hpp"
#include "lrd/series.hpp"

namespace lrdtool {

// Thrown for malformed option values; maps to exit code 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<std::string> split_list(std::string_view text);

/// "100ms", "1s", "10s", "2min" or a bare millisecond count.
std::int64_t parse_interval_ms(std::string_view text);
std::vector<std::int64_t> parse_intervals(std::string_view text);
std::vector<lrd::EstimatorMethod> parse_methods(std::string_view text);
std::vector<lrd::Measure> parse_measures(std::string_view text);
std::vector<double> parse_doubles(std::string_view text);
std::optional<lrd::CaptureFormat> parse_format(std::string_view text);

struct IngestOptions {
    std::vector<std::string> inputs;
    std::string format = "auto";
    std::string out;
};

struct AnalyzeOptions {
    std::vector<std::string> inputs;
    std::string rules;
    std::string intervals = "100ms,500ms,1s,10s";
    std::string methods = "vt,rs,pgram,whittle";
    std::string measure = "both";
    int tz_offset = 0;
    std::string out = ".";
    std::string format = "csv";
};

struct SynthOptions {
    double h = 0.5;
    std::size_t n = 0;
    std::uint64_t seed = 0;
    double sigma2 = 1.0;
    std::string out;
};

struct CalibrateOptions {
    std::string h_grid = "0.55,0.6,0.7,0.8,0.9";
    std::size_t seeds = 20;
    std::size_t n = 65536;
    std::uint64_t seed = 0;
    std::string methods = "vt,rs,pgram,whittle";
    std::string out;
};

struct ReportOptions {
    std::string run_json;
};

int run_ingest(const IngestOptions& o);
int run_analyze(const AnalyzeOptions& o);
int run_synth(const SynthOptions& o);
int run_calibrate(const CalibrateOptions& o);
int run_report(const ReportOptions& o);

}  // namespace lrdtool
