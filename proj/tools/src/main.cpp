#include <CLI11.hpp>

#include <exception>
#include <iostream>

#include "commands.hpp"
#include "lrd/errors.hpp"

namespace {

constexpr int exit_data_error = 1;
constexpr int exit_usage_error = 2;

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Long-range dependence analysis of packet traces"};
    app.require_subcommand(1);

    lrdtool::IngestOptions ingest;
    auto* ingest_cmd = app.add_subcommand("ingest", "Convert captures to the canonical packet log");
    ingest_cmd->add_option("files", ingest.inputs, "pcap or packet-log files")->required();
    ingest_cmd->add_option("--format", ingest.format, "pcap, log or auto")
        ->check(CLI::IsMember({"auto", "pcap", "log"}));
    ingest_cmd->add_option("--out", ingest.out, "Output file (default stdout)");

    lrdtool::AnalyzeOptions analyze;
    auto* analyze_cmd = app.add_subcommand("analyze", "Classify, bin and estimate H; write reports");
    analyze_cmd->add_option("files", analyze.inputs, "pcap or packet-log files")->required();
    analyze_cmd->add_option("--rules", analyze.rules, "Rule file (default: built-in rules)")
        ->check(CLI::ExistingFile);
    analyze_cmd->add_option("--intervals", analyze.intervals, "Bin widths, e.g. 100ms,500ms,1s,10s");
    analyze_cmd->add_option("--methods", analyze.methods, "Any of vt,rs,pgram,whittle");
    analyze_cmd->add_option("--measure", analyze.measure, "bytes, packets or both")
        ->check(CLI::IsMember({"bytes", "packets", "both"}));
    analyze_cmd->add_option("--tz-offset", analyze.tz_offset, "Local time offset from UTC in minutes")
        ->check(CLI::Range(-1440, 1440));
    analyze_cmd->add_option("--out", analyze.out, "Output directory");
    analyze_cmd->add_option("--format", analyze.format, "csv (CSVs plus run.json) or json")
        ->check(CLI::IsMember({"csv", "json"}));

    lrdtool::SynthOptions synth;
    auto* synth_cmd = app.add_subcommand("synth", "Generate fractional Gaussian noise");
    // --h is the Hurst exponent here, so help is --help only.
    synth_cmd->set_help_flag("--help", "Print this help message and exit");
    synth_cmd->add_option("--h", synth.h, "Hurst exponent in (0, 1)")->required();
    synth_cmd->add_option("--n", synth.n, "Series length")->required();
    synth_cmd->add_option("--seed", synth.seed, "RNG seed")->required();
    synth_cmd->add_option("--sigma2", synth.sigma2, "Marginal variance");
    synth_cmd->add_option("--out", synth.out, "Output file (default stdout)");

    lrdtool::CalibrateOptions calibrate;
    auto* calibrate_cmd = app.add_subcommand("calibrate", "Run every estimator on synthetic fGn");
    calibrate_cmd->add_option("--h-grid", calibrate.h_grid, "Comma-separated true H values");
    calibrate_cmd->add_option("--seeds", calibrate.seeds, "Replicates per H");
    calibrate_cmd->add_option("--n", calibrate.n, "Series length");
    calibrate_cmd->add_option("--seed", calibrate.seed, "Base seed; replicate s uses seed + s");
    calibrate_cmd->add_option("--methods", calibrate.methods, "Any of vt,rs,pgram,whittle");
    calibrate_cmd->add_option("--out", calibrate.out, "Output CSV (default stdout)");

    lrdtool::ReportOptions report;
    auto* report_cmd = app.add_subcommand("report", "Print the report tables stored in a run.json");
    report_cmd->add_option("run_json", report.run_json, "run.json written by analyze")
        ->required()
        ->check(CLI::ExistingFile);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage_error;
    }

    try {
        if (*ingest_cmd) return lrdtool::run_ingest(ingest);
        if (*analyze_cmd) return lrdtool::run_analyze(analyze);
        if (*synth_cmd) return lrdtool::run_synth(synth);
        if (*calibrate_cmd) return lrdtool::run_calibrate(calibrate);
        if (*report_cmd) return lrdtool::run_report(report);
    } catch (const lrdtool::UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage_error;
    } catch (const lrd::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_data_error;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_data_error;
    }
    return exit_usage_error;
}
