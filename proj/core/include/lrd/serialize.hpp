#pragma once

#include <ostream>
#include <string>
#include <string_view>

#include "lrd/analysis.hpp"
#include "lrd/estimators.hpp"
#include "lrd/report.hpp"

namespace lrd {

/// JSON object with the HurstEstimate fields; absent diagnostics are null.
std::string estimate_to_json(const HurstEstimate& est);

/// Full run record (config, ingest stats, estimates, skips, reports), keys
/// in a fixed order so identical runs serialize byte-identically.
std::string run_to_json(const AnalysisRun& run);

/// Restores a run written by run_to_json and rebuilds its reports from the
/// stored counters and estimates. Throws lrd::Error on malformed input.
AnalysisRun run_from_json(std::string_view text);

void write_volume_csv(std::ostream& out, const VolumeReport& r);
void write_distribution_csv(std::ostream& out, const HurstDistributionReport& r);
void write_activity_csv(std::ostream& out, const ActivityReport& r);
void write_estimates_csv(std::ostream& out, const AnalysisRun& run);

}  // namespace lrd
