#include "lrd/serialize.hpp"

#include <json.hpp>

#include "lrd/errors.hpp"

namespace lrd {

using Json = nlohmann::ordered_json;

namespace {

Json optional_number(const std::optional<double>& v)
{
    return v ? Json(*v) : Json(nullptr);
}

Json estimate_json(const HurstEstimate& est)
{
    Json j;
    j["method"] = to_string(est.method);
    j["h"] = est.h;
    j["beta"] = optional_number(est.beta);
    j["slope"] = optional_number(est.slope);
    j["intercept"] = optional_number(est.intercept);
    j["r_squared"] = optional_number(est.r_squared);
    j["points_used"] = est.points_used;
    Json warnings = Json::array();
    for (const auto w : est.warnings) {
        warnings.push_back(to_string(w));
    }
    j["warnings"] = warnings;
    return j;
}

Json percent_json(const std::optional<Percent>& p)
{
    return p ? Json(p->value()) : Json(nullptr);
}

Json reports_json(const AnalysisRun& run)
{
    Json reports;

    Json volume;
    Json rows = Json::array();
    for (const auto cls : all_traffic_classes) {
        const auto i = class_index(cls);
        Json row;
        row["class"] = class_id(cls);
        row["bytes_pct"] = run.volume.rows[i].bytes_pct.value();
        row["packets_pct"] = run.volume.rows[i].packets_pct.value();
        row["bytes"] = run.volume.counters[i].bytes;
        row["packets"] = run.volume.counters[i].packets;
        rows.push_back(row);
    }
    volume["rows"] = rows;
    const auto totals = run.volume.totals();
    volume["totals"] = {{"bytes_pct", totals.bytes_pct.value()},
                        {"packets_pct", totals.packets_pct.value()},
                        {"bytes", run.volume.total_bytes},
                        {"packets", run.volume.total_packets}};
    reports["volume"] = volume;

    Json dist = nullptr;
    if (run.distribution) {
        dist = Json::array();
        for (const auto cls : all_traffic_classes) {
            const auto& row = run.distribution->rows[class_index(cls)];
            Json r;
            r["class"] = class_id(cls);
            r["samples"] = row ? row->samples : 0;
            Json sample_pct;
            Json volume_pct;
            for (std::size_t b = 0; b < all_buckets.size(); ++b) {
                const auto key = std::string(bucket_key(all_buckets[b]));
                sample_pct[key] = row ? percent_json(row->sample_pct[b]) : Json(nullptr);
                volume_pct[key] =
                    row && row->volume_pct ? percent_json((*row->volume_pct)[b]) : Json(nullptr);
            }
            r["sample_pct"] = sample_pct;
            r["volume_pct"] = volume_pct;
            dist.push_back(r);
        }
    }
    reports["hurst_distribution"] = dist;

    Json act = nullptr;
    if (run.activity) {
        act = Json::array();
        for (std::size_t p = 0; p < all_periods.size(); ++p) {
            const auto& row = run.activity->rows[p];
            Json r;
            r["period"] = to_string(all_periods[p]);
            r["samples"] = row ? row->samples : 0;
            Json sample_pct;
            Json volume_pct;
            for (std::size_t b = 0; b < persistent_buckets.size(); ++b) {
                const auto key = std::string(bucket_key(persistent_buckets[b]));
                sample_pct[key] = row ? percent_json(row->sample_pct[b]) : Json(nullptr);
                volume_pct[key] =
                    row && row->volume_pct ? percent_json((*row->volume_pct)[b]) : Json(nullptr);
            }
            r["sample_pct"] = sample_pct;
            r["volume_pct"] = volume_pct;
            act.push_back(r);
        }
    }
    reports["activity"] = act;
    reports["assumptions"] = Json::array({"13:00-15:00 local time is labelled Medium",
                                          "H buckets are lower-closed: [0.45,0.5), [0.5,0.7), [0.7,inf)",
                                          "activity percentages are shares of all samples (or bytes) in the same "
                                          "period, so the two H > 0.5 columns need not sum to 100"});
    return reports;
}

[[noreturn]] void bad_json(const std::string& what)
{
    throw Error("run record: " + what);
}

Timestamp ts_from(const Json& j)
{
    auto t = parse_timestamp(j.get<std::string>());
    if (!t) {
        bad_json("bad timestamp " + j.dump());
    }
    return *t;
}

template <typename Enum, typename Parse>
Enum enum_from(const Json& j, Parse parse)
{
    auto v = parse(j.get<std::string>());
    if (!v) {
        bad_json("unknown value " + j.dump());
    }
    return *v;
}

std::optional<ActivityPeriod> parse_period(std::string_view s)
{
    for (const auto p : all_periods) {
        if (to_string(p) == s) {
            return p;
        }
    }
    return std::nullopt;
}

std::optional<EstimateWarning> parse_warning(std::string_view s)
{
    for (const auto w : {EstimateWarning::OutOfRange, EstimateWarning::LowR2, EstimateWarning::BoundaryHit}) {
        if (to_string(w) == s) {
            return w;
        }
    }
    return std::nullopt;
}

std::optional<double> number_or_null(const Json& j)
{
    if (j.is_null()) {
        return std::nullopt;
    }
    return j.get<double>();
}

}  // namespace

std::string estimate_to_json(const HurstEstimate& est)
{
    return estimate_json(est).dump();
}

std::string run_to_json(const AnalysisRun& run)
{
    Json j;
    j["format"] = "lrd-analysis-run/1";
    j["rules_version"] = run.rules_version;

    Json cfg;
    cfg["intervals_ms"] = run.config.intervals_ms;
    Json methods = Json::array();
    for (const auto m : run.config.methods) methods.push_back(to_string(m));
    cfg["methods"] = methods;
    Json measures = Json::array();
    for (const auto m : run.config.measures) measures.push_back(to_string(m));
    cfg["measures"] = measures;
    cfg["tz_offset_minutes"] = run.config.tz_offset_minutes;
    cfg["sample_seconds"] = run.config.sample_seconds;
    cfg["min_coverage_seconds"] = run.config.min_coverage_seconds;
    j["config"] = cfg;

    Json ingest;
    ingest["packets_parsed"] = run.ingest.packets_parsed;
    ingest["packets_skipped_non_ip"] = run.ingest.packets_skipped_non_ip;
    ingest["bytes_total"] = run.ingest.bytes_total;
    ingest["first_ts"] = run.ingest.first_ts ? Json(format_timestamp(*run.ingest.first_ts)) : Json(nullptr);
    ingest["last_ts"] = run.ingest.last_ts ? Json(format_timestamp(*run.ingest.last_ts)) : Json(nullptr);
    j["ingest"] = ingest;

    Json counters = Json::array();
    for (const auto cls : all_traffic_classes) {
        const auto& c = run.counters[class_index(cls)];
        counters.push_back({{"class", class_id(cls)}, {"packets", c.packets}, {"bytes", c.bytes}});
    }
    j["class_counters"] = counters;

    Json windows = Json::array();
    for (const auto& w : run.windows) {
        windows.push_back({{"start", format_timestamp(w.start)},
                           {"end", format_timestamp(w.end)},
                           {"series_start", format_timestamp(w.series_start)},
                           {"series_end", format_timestamp(w.series_end)},
                           {"activity", to_string(w.period)},
                           {"analyzed", w.analyzed}});
    }
    j["windows"] = windows;

    Json estimates = Json::array();
    for (const auto& e : run.estimates) {
        Json r;
        r["class"] = class_id(e.cls);
        r["window"] = e.window;
        r["interval_ms"] = e.interval_ms;
        r["measure"] = to_string(e.measure);
        r["bins"] = e.bins;
        r["volume_bytes"] = e.volume_bytes;
        r["volume_packets"] = e.volume_packets;
        r["bucket"] = to_string(bucket_h(e.estimate.h));
        r["estimate"] = estimate_json(e.estimate);
        estimates.push_back(r);
    }
    j["estimates"] = estimates;

    Json skipped = Json::array();
    for (const auto& s : run.skipped) {
        skipped.push_back({{"class", class_id(s.cls)},
                           {"window", s.window},
                           {"interval_ms", s.interval_ms},
                           {"measure", to_string(s.measure)},
                           {"method", s.method ? Json(to_string(*s.method)) : Json(nullptr)},
                           {"reason", s.reason}});
    }
    j["skipped"] = skipped;
    j["warnings"] = run.warnings;
    j["bucket_method"] = to_string(run.bucket_method);
    j["bucket_measure"] = to_string(run.bucket_measure);
    j["reports"] = reports_json(run);
    return j.dump(2) + "\n";
}

AnalysisRun run_from_json(std::string_view text)
{
    AnalysisRun run;
    try {
        const Json j = Json::parse(text);
        if (j.value("format", "") != "lrd-analysis-run/1") {
            bad_json("unsupported format tag");
        }
        run.rules_version = j.at("rules_version").get<std::string>();

        const auto& cfg = j.at("config");
        run.config.intervals_ms = cfg.at("intervals_ms").get<std::vector<std::int64_t>>();
        run.config.methods.clear();
        for (const auto& m : cfg.at("methods")) {
            run.config.methods.push_back(enum_from<EstimatorMethod>(m, parse_method));
        }
        run.config.measures.clear();
        for (const auto& m : cfg.at("measures")) {
            run.config.measures.push_back(enum_from<Measure>(m, parse_measure));
        }
        run.config.tz_offset_minutes = cfg.at("tz_offset_minutes").get<int>();
        run.config.sample_seconds = cfg.at("sample_seconds").get<std::int64_t>();
        run.config.min_coverage_seconds = cfg.at("min_coverage_seconds").get<std::int64_t>();

        const auto& ingest = j.at("ingest");
        run.ingest.packets_parsed = ingest.at("packets_parsed").get<std::uint64_t>();
        run.ingest.packets_skipped_non_ip = ingest.at("packets_skipped_non_ip").get<std::uint64_t>();
        run.ingest.bytes_total = ingest.at("bytes_total").get<std::uint64_t>();
        if (!ingest.at("first_ts").is_null()) run.ingest.first_ts = ts_from(ingest.at("first_ts"));
        if (!ingest.at("last_ts").is_null()) run.ingest.last_ts = ts_from(ingest.at("last_ts"));

        for (const auto& c : j.at("class_counters")) {
            const auto cls = class_from_id(c.at("class").get<int>());
            run.counters[class_index(cls)] = {c.at("packets").get<std::uint64_t>(), c.at("bytes").get<std::uint64_t>()};
        }

        for (const auto& w : j.at("windows")) {
            SampleWindow win;
            win.start = ts_from(w.at("start"));
            win.end = ts_from(w.at("end"));
            win.series_start = ts_from(w.at("series_start"));
            win.series_end = ts_from(w.at("series_end"));
            win.period = enum_from<ActivityPeriod>(w.at("activity"), parse_period);
            win.analyzed = w.at("analyzed").get<bool>();
            run.windows.push_back(win);
        }

        for (const auto& e : j.at("estimates")) {
            EstimateRecord rec;
            rec.cls = class_from_id(e.at("class").get<int>());
            rec.window = e.at("window").get<std::size_t>();
            if (rec.window >= run.windows.size()) {
                bad_json("estimate refers to unknown window");
            }
            rec.interval_ms = e.at("interval_ms").get<std::int64_t>();
            rec.measure = enum_from<Measure>(e.at("measure"), parse_measure);
            rec.bins = e.at("bins").get<std::size_t>();
            rec.volume_bytes = e.at("volume_bytes").get<std::uint64_t>();
            rec.volume_packets = e.at("volume_packets").get<std::uint64_t>();
            const auto& est = e.at("estimate");
            rec.estimate.method = enum_from<EstimatorMethod>(est.at("method"), parse_method);
            rec.estimate.h = est.at("h").get<double>();
            rec.estimate.beta = number_or_null(est.at("beta"));
            rec.estimate.slope = number_or_null(est.at("slope"));
            rec.estimate.intercept = number_or_null(est.at("intercept"));
            rec.estimate.r_squared = number_or_null(est.at("r_squared"));
            rec.estimate.points_used = est.at("points_used").get<std::size_t>();
            for (const auto& w : est.at("warnings")) {
                rec.estimate.warnings.push_back(enum_from<EstimateWarning>(w, parse_warning));
            }
            run.estimates.push_back(std::move(rec));
        }

        for (const auto& s : j.at("skipped")) {
            SkippedSeries sk;
            sk.cls = class_from_id(s.at("class").get<int>());
            sk.window = s.at("window").get<std::size_t>();
            sk.interval_ms = s.at("interval_ms").get<std::int64_t>();
            sk.measure = enum_from<Measure>(s.at("measure"), parse_measure);
            if (!s.at("method").is_null()) {
                sk.method = enum_from<EstimatorMethod>(s.at("method"), parse_method);
            }
            sk.reason = s.at("reason").get<std::string>();
            run.skipped.push_back(std::move(sk));
        }
        run.warnings = j.at("warnings").get<std::vector<std::string>>();
        run.bucket_method = enum_from<EstimatorMethod>(j.at("bucket_method"), parse_method);
        run.bucket_measure = enum_from<Measure>(j.at("bucket_measure"), parse_measure);
    } catch (const Json::exception& e) {
        bad_json(e.what());
    } catch (const std::out_of_range& e) {
        bad_json(e.what());
    }
    build_reports(run);
    return run;
}

// ---------------------------------------------------------------------------
// CSV

void write_volume_csv(std::ostream& out, const VolumeReport& r)
{
    out << "class,bytes_pct,packets_pct,bytes,packets\n";
    for (const auto cls : all_traffic_classes) {
        const auto i = class_index(cls);
        out << class_id(cls) << ',' << r.rows[i].bytes_pct.to_string(volume_decimals) << ','
            << r.rows[i].packets_pct.to_string(volume_decimals) << ',' << r.counters[i].bytes << ','
            << r.counters[i].packets << '\n';
    }
    const auto t = r.totals();
    out << "total," << t.bytes_pct.to_string(volume_decimals) << ',' << t.packets_pct.to_string(volume_decimals)
        << ',' << r.total_bytes << ',' << r.total_packets << '\n';
}

void write_distribution_csv(std::ostream& out, const HurstDistributionReport& r)
{
    out << "class,samples";
    for (const char* metric : {"sample_pct", "volume_pct"}) {
        for (const auto b : all_buckets) {
            out << ',' << metric << ':' << bucket_key(b);
        }
    }
    out << '\n';
    for (const auto cls : all_traffic_classes) {
        const auto& row = r.rows[class_index(cls)];
        out << class_id(cls) << ',' << (row ? row->samples : 0);
        for (std::size_t b = 0; b < all_buckets.size(); ++b) {
            out << ',' << (row ? row->sample_pct[b].to_string(distribution_decimals) : "n/a");
        }
        for (std::size_t b = 0; b < all_buckets.size(); ++b) {
            out << ','
                << (row && row->volume_pct ? (*row->volume_pct)[b].to_string(distribution_decimals) : "n/a");
        }
        out << '\n';
    }
}

void write_activity_csv(std::ostream& out, const ActivityReport& r)
{
    out << "period,samples";
    for (const char* metric : {"sample_pct", "volume_pct"}) {
        for (const auto b : persistent_buckets) {
            out << ',' << metric << ':' << bucket_key(b);
        }
    }
    out << '\n';
    for (std::size_t p = 0; p < all_periods.size(); ++p) {
        const auto& row = r.rows[p];
        out << to_string(all_periods[p]) << ',' << (row ? row->samples : 0);
        for (std::size_t b = 0; b < persistent_buckets.size(); ++b) {
            out << ',' << (row ? row->sample_pct[b].to_string(distribution_decimals) : "n/a");
        }
        for (std::size_t b = 0; b < persistent_buckets.size(); ++b) {
            out << ','
                << (row && row->volume_pct ? (*row->volume_pct)[b].to_string(distribution_decimals) : "n/a");
        }
        out << '\n';
    }
}

void write_estimates_csv(std::ostream& out, const AnalysisRun& run)
{
    out << "class,window_start,activity,interval_ms,measure,method,h,beta,r_squared,points_used,volume_bytes,"
           "bucket,warnings\n";
    for (const auto& e : run.estimates) {
        const auto& w = run.windows.at(e.window);
        std::string warnings;
        for (const auto flag : e.estimate.warnings) {
            if (!warnings.empty()) warnings += ';';
            warnings += to_string(flag);
        }
        out << class_id(e.cls) << ',' << format_timestamp(w.start) << ',' << to_string(w.period) << ','
            << e.interval_ms << ',' << to_string(e.measure) << ',' << to_string(e.estimate.method) << ','
            << format_number(e.estimate.h) << ',' << (e.estimate.beta ? format_number(*e.estimate.beta) : "")
            << ',' << (e.estimate.r_squared ? format_number(*e.estimate.r_squared) : "") << ','
            << e.estimate.points_used << ',' << e.volume_bytes << ",\"" << to_string(bucket_h(e.estimate.h))
            << "\"," << warnings << '\n';
    }
}

}  // namespace lrd
