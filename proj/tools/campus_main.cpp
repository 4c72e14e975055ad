// campus: sensor-driven demand analytics and resource allocation for a
// university campus. One subcommand per pipeline; every run drops a manifest
// with hashed inputs so results can be replayed exactly.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>
#include <openssl/evp.h>

#include "campus/bus/ga.hpp"
#include "campus/bus/io.hpp"
#include "campus/bus/queue.hpp"
#include "campus/bus/wait.hpp"
#include "campus/carpark/io.hpp"
#include "campus/carpark/optimize.hpp"
#include "campus/classroom/io.hpp"
#include "campus/common/errors.hpp"
#include "campus/ctmc/io.hpp"
#include "campus/ctmc/partition.hpp"
#include "campus/forecast/baseline.hpp"
#include "campus/forecast/io.hpp"
#include "campus/forecast/linear.hpp"
#include "campus/forecast/metrics.hpp"
#include "campus/forecast/splits.hpp"
#include "campus/lpr/cleanse.hpp"
#include "campus/lpr/io.hpp"
#include "campus/lpr/kmeans.hpp"
#include "campus/lpr/rates.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace campus;

namespace {

constexpr std::uint64_t kDefaultSeed = 12345;

std::string sha256_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
    char buf[65536];
    while (in.read(buf, sizeof buf) || in.gcount() > 0)
        EVP_DigestUpdate(ctx, buf, static_cast<std::size_t>(in.gcount()));
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx, digest, &len);
    EVP_MD_CTX_free(ctx);
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned i = 0; i < len; ++i) {
        out.push_back(hex[digest[i] >> 4]);
        out.push_back(hex[digest[i] & 0xf]);
    }
    return out;
}

struct Manifest {
    std::string command;
    std::vector<std::string> inputs;
    json config = json::object();
    std::uint64_t seed = kDefaultSeed;
    std::vector<std::string> outputs;
    std::chrono::steady_clock::time_point started = std::chrono::steady_clock::now();

    void write(const fs::path& outdir) const {
        json j;
        j["command"] = command;
        j["inputs"] = json::array();
        for (const auto& p : inputs) j["inputs"].push_back({{"path", p}, {"sha256", sha256_file(p)}});
        j["config"] = config;
        j["seed"] = seed;
        j["outputs"] = outputs;
        j["duration_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(
                               std::chrono::steady_clock::now() - started)
                               .count();
        std::ofstream out(outdir / "manifest.json");
        out << j.dump(2) << '\n';
    }
};

void write_json(const fs::path& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << j.dump(2) << '\n';
}

std::string table_ext(csv::TableFormat f) { return f == csv::TableFormat::Csv ? ".csv" : ".json"; }

struct GlobalOpts {
    std::uint64_t seed = kDefaultSeed;
    std::string outdir = ".";
    csv::TableFormat format = csv::TableFormat::Csv;

    fs::path out(const std::string& name) const { return fs::path(outdir) / name; }
};

// ---------------------------------------------------------------------------
// cleanse
// ---------------------------------------------------------------------------

struct CleanseArgs {
    std::string input;
    lpr::CleanseConfig cfg;
    int clusters = 3;
};

int cmd_cleanse(const GlobalOpts& g, const CleanseArgs& a, Manifest manifest) {
    auto records = lpr::read_lpr_csv(a.input);
    std::vector<lpr::PlateRecord> entries, exits;
    for (auto& r : records)
        (r.direction == lpr::Direction::Entry ? entries : exits).push_back(std::move(r));
    auto by_time = [](const lpr::PlateRecord& x, const lpr::PlateRecord& y) {
        return x.timestamp < y.timestamp;
    };
    std::sort(entries.begin(), entries.end(), by_time);
    std::sort(exits.begin(), exits.end(), by_time);

    json report;
    auto stage = [&](const char* name, const char* side, std::size_t before, std::size_t after) {
        report["stages"][name][side] = {
            {"before", before},
            {"after", after},
            {"removed_pct", before ? 100.0 * static_cast<double>(before - after) / before : 0.0}};
    };

    const std::size_t e0 = entries.size(), x0 = exits.size();
    entries = lpr::dedup_multiple_recognitions(std::move(entries), a.cfg);
    exits = lpr::dedup_multiple_recognitions(std::move(exits), a.cfg);
    stage("multiple_recognitions", "entry", e0, entries.size());
    stage("multiple_recognitions", "exit", x0, exits.size());

    const std::size_t e1 = entries.size(), x1 = exits.size();
    entries = lpr::filter_low_ocr(entries, a.cfg.ocr_threshold_entry);
    exits = lpr::filter_low_ocr(exits, a.cfg.ocr_threshold_exit);
    stage("low_ocr_and_not_read", "entry", e1, entries.size());
    stage("low_ocr_and_not_read", "exit", x1, exits.size());

    auto match = lpr::match_entries_exits(entries, exits, a.cfg);
    report["matching"] = {{"stays", match.stays.size()},
                          {"unmatched_entries", match.unmatched_entries.size()},
                          {"unmatched_exits", match.unmatched_exits.size()},
                          {"matched_pct", exits.empty() && entries.empty()
                                              ? 0.0
                                              : 100.0 * 2.0 * static_cast<double>(match.stays.size()) /
                                                    static_cast<double>(entries.size() + exits.size())}};

    const std::string stays_name = "stays" + table_ext(g.format);
    lpr::write_stays(g.out(stays_name).string(), match.stays, g.format);
    manifest.outputs.push_back(stays_name);

    // hourly rate profiles over the span of observed days
    std::int64_t first = std::numeric_limits<std::int64_t>::max(), last = std::numeric_limits<std::int64_t>::min();
    for (const auto& r : entries) first = std::min(first, r.timestamp), last = std::max(last, r.timestamp);
    for (const auto& r : exits) first = std::min(first, r.timestamp), last = std::max(last, r.timestamp);
    RateProfile arrivals, departures;
    if (first <= last) {
        const std::int64_t start = civil::midnight_of(first);
        const auto hours = static_cast<std::size_t>((civil::midnight_of(last) + civil::kSecondsPerDay - start) / 3600);
        std::vector<std::int64_t> ein, eout;
        for (const auto& r : entries) ein.push_back(r.timestamp);
        for (const auto& r : exits) eout.push_back(r.timestamp);
        arrivals = lpr::hourly_rates(ein, start, hours);
        departures = lpr::hourly_rates(eout, start, hours);
    }
    const std::string rates_name = "rates" + table_ext(g.format);
    lpr::write_rates(g.out(rates_name).string(), arrivals, departures, g.format);
    manifest.outputs.push_back(rates_name);

    const std::string clusters_name = "clusters" + table_ext(g.format);
    if (match.stays.size() >= static_cast<std::size_t>(std::max(a.clusters, 1))) {
        auto clusters = lpr::kmeans_users(match.stays, a.clusters, g.seed);
        lpr::write_clusters(g.out(clusters_name).string(), clusters, g.format);
    } else {
        lpr::write_clusters(g.out(clusters_name).string(), {}, g.format);
        report["clustering_skipped"] = "fewer stays than clusters";
    }
    manifest.outputs.push_back(clusters_name);

    write_json(g.out("cleanse_report.json"), report);
    manifest.outputs.push_back("cleanse_report.json");
    manifest.write(g.outdir);
    return 0;
}

// ---------------------------------------------------------------------------
// forecast
// ---------------------------------------------------------------------------

struct ForecastArgs {
    std::string input;
    std::string mode = "rates";      // rates | attendance
    std::string loss = "ols";        // ols | quantile | baseline
    double tau = 0.75;
    int horizon_days = 5;
    int lag_days = 10;
    int fourier_pairs = 2;
    std::size_t folds = 0;           // 0 = no evaluation
    std::size_t test_len = 24;
};

forecast::LinearModel fit_by_loss(const forecast::SupervisedSet& set, const ForecastArgs& a) {
    if (a.loss == "quantile") return forecast::fit_quantile(set, a.tau);
    return forecast::fit_ols(set);
}

int cmd_forecast_rates(const GlobalOpts& g, const ForecastArgs& a, Manifest& manifest) {
    auto [arrivals, departures] = lpr::read_rates_csv(a.input);
    forecast::FeatureSpec spec;
    spec.fourier_pairs = a.fourier_pairs;
    spec.lag_days = a.lag_days;

    json models = json::object();
    std::vector<std::vector<std::string>> rows;
    const long total = static_cast<long>(arrivals.values.size());
    std::vector<double> arr_pred, dep_pred;
    for (int h = 1; h <= a.horizon_days; ++h) {
        for (const auto* series : {&arrivals, &departures}) {
            const bool is_arrivals = series == &arrivals;
            if (a.loss == "baseline") {
                auto base = forecast::baseline_profile(*series);
                for (int hour = 0; hour < 24; ++hour) {
                    const long t = total + 24L * (h - 1) + hour;
                    (is_arrivals ? arr_pred : dep_pred)
                        .push_back(base.values[static_cast<std::size_t>(t % 24)]);
                }
                continue;
            }
            auto set = forecast::build_direct_set(*series, spec, h);
            auto model = fit_by_loss(set, a);
            models[(is_arrivals ? "arrivals_h" : "departures_h") + std::to_string(h)] =
                forecast::model_to_json(model);
            // predict the h-th day past the end of history
            const long day0 = total; // first unseen hour index
            for (int hour = 0; hour < 24; ++hour) {
                const long t = day0 + 24L * (h - 1) + hour;
                const auto row = forecast::direct_feature_row(*series, spec, h, t);
                (is_arrivals ? arr_pred : dep_pred).push_back(model.predict(row));
            }
        }
    }
    for (std::size_t i = 0; i < arr_pred.size(); ++i) {
        const std::int64_t slot = arrivals.horizon_start + (total + static_cast<long>(i)) * 3600;
        rows.push_back({civil::format_timestamp(slot), csv::format_double(arr_pred[i]),
                        csv::format_double(dep_pred[i])});
    }
    const std::string name = "forecast" + table_ext(g.format);
    csv::write_table(g.out(name).string(), "slot_start,arrivals,departures", rows, g.format);
    manifest.outputs.push_back(name);
    if (a.loss != "baseline") {
        write_json(g.out("models.json"), models);
        manifest.outputs.push_back("models.json");
    }

    if (a.folds > 0) {
        // expanding-window evaluation on the 1-day-ahead arrival model
        auto set = forecast::build_direct_set(arrivals, spec, 1);
        json eval = json::array();
        for (const auto& fold : forecast::rolling_splits(static_cast<std::size_t>(set.X.rows()),
                                                         a.folds, a.test_len)) {
            forecast::SupervisedSet train;
            train.feature_names = set.feature_names;
            train.X.resize(static_cast<long>(fold.train.size()), set.X.cols());
            train.y.resize(static_cast<long>(fold.train.size()));
            for (std::size_t r = 0; r < fold.train.size(); ++r) {
                train.X.row(static_cast<long>(r)) = set.X.row(static_cast<long>(fold.train[r]));
                train.y(static_cast<long>(r)) = set.y(static_cast<long>(fold.train[r]));
            }
            auto model = fit_by_loss(train, a);
            std::vector<double> actual, predicted;
            for (std::size_t t : fold.test) {
                actual.push_back(set.y(static_cast<long>(t)));
                predicted.push_back(model.predict(Eigen::RowVectorXd(set.X.row(static_cast<long>(t)))));
            }
            eval.push_back({{"train_size", fold.train.size()},
                            {"test_size", fold.test.size()},
                            {"mae", forecast::mae(actual, predicted)},
                            {"rmse", forecast::rmse(actual, predicted)},
                            {"wmae", forecast::wmae(actual, predicted, a.tau)}});
        }
        write_json(g.out("evaluation.json"), eval);
        manifest.outputs.push_back("evaluation.json");
    }
    return 0;
}

int cmd_forecast_attendance(const GlobalOpts& g, const ForecastArgs& a, Manifest& manifest) {
    auto rows = forecast::read_attendance_csv(a.input);
    std::vector<double> targets;
    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        auto ratio = classroom::normalize_attendance(rows[i].attendance, rows[i].enrolment);
        if (!ratio) continue;
        kept.push_back(i);
        targets.push_back(*ratio);
    }
    if (kept.empty()) throw std::runtime_error("no usable attendance rows after cleansing");

    std::vector<std::string> buckets;
    for (std::size_t i : kept) {
        const int h = rows[i].start_hour;
        buckets.push_back(h < 12 ? "morning" : h < 15 ? "afternoon" : h < 18 ? "evening" : "night");
    }
    auto [bucket_cols, bucket_names] = forecast::one_hot(buckets, "time_of_day");

    forecast::SupervisedSet set;
    set.feature_names = {"intercept", "enrolment", "seats", "duration_hours", "week"};
    for (const auto& n : bucket_names) set.feature_names.push_back(n);
    set.X.resize(static_cast<long>(kept.size()), static_cast<long>(set.feature_names.size()));
    set.y.resize(static_cast<long>(kept.size()));
    for (std::size_t r = 0; r < kept.size(); ++r) {
        const auto& row = rows[kept[r]];
        long c = 0;
        set.X(static_cast<long>(r), c++) = 1.0;
        set.X(static_cast<long>(r), c++) = row.enrolment;
        set.X(static_cast<long>(r), c++) = row.seats;
        set.X(static_cast<long>(r), c++) = row.end_hour - row.start_hour;
        set.X(static_cast<long>(r), c++) = row.week;
        for (const auto& col : bucket_cols) set.X(static_cast<long>(r), c++) = col[r];
        set.y(static_cast<long>(r)) = targets[r];
    }

    auto model = fit_by_loss(set, a);
    write_json(g.out("model.json"), forecast::model_to_json(model));
    manifest.outputs.push_back("model.json");

    std::vector<std::vector<std::string>> pred_rows;
    std::vector<double> actual, predicted;
    for (std::size_t r = 0; r < kept.size(); ++r) {
        const double p = model.predict(Eigen::RowVectorXd(set.X.row(static_cast<long>(r))));
        actual.push_back(set.y(static_cast<long>(r)));
        predicted.push_back(p);
        pred_rows.push_back({rows[kept[r]].course_id, std::to_string(rows[kept[r]].week),
                             csv::format_double(set.y(static_cast<long>(r))), csv::format_double(p)});
    }
    const std::string name = "predictions" + table_ext(g.format);
    csv::write_table(g.out(name).string(), "course_id,week,actual,predicted", pred_rows, g.format);
    manifest.outputs.push_back(name);

    json metrics = {{"rows_used", kept.size()},
                    {"rows_dropped", rows.size() - kept.size()},
                    {"mae", forecast::mae(actual, predicted)},
                    {"rmse", forecast::rmse(actual, predicted)},
                    {"wmae", forecast::wmae(actual, predicted, a.tau)}};
    write_json(g.out("metrics.json"), metrics);
    manifest.outputs.push_back("metrics.json");
    return 0;
}

int cmd_forecast(const GlobalOpts& g, const ForecastArgs& a, Manifest manifest) {
    int rc = a.mode == "attendance" ? cmd_forecast_attendance(g, a, manifest)
                                    : cmd_forecast_rates(g, a, manifest);
    manifest.write(g.outdir);
    return rc;
}

// ---------------------------------------------------------------------------
// simulate-carpark
// ---------------------------------------------------------------------------

struct SimulateArgs {
    std::string spec_path;
    bool scheme_sweep = false;
    double rho_step = 0.05;
    int subscribers = 200;
    double p_in = 0.5, p_out = 0.4, diversion = 0.2;
};

int cmd_simulate_carpark(const GlobalOpts& g, const SimulateArgs& a, Manifest manifest) {
    auto spec = ctmc::read_spec_json(a.spec_path);
    auto trace = ctmc::simulate_day(spec, ctmc::point_mass(static_cast<std::size_t>(spec.capacity) + 1));
    const std::string trace_name = "trace" + table_ext(g.format);
    ctmc::write_trace(g.out(trace_name).string(), spec, trace, g.format);
    manifest.outputs.push_back(trace_name);

    json report = {{"capacity", spec.capacity},
                   {"epochs", trace.rejections.size()},
                   {"total_expected_rejections", trace.total_rejections}};

    if (a.scheme_sweep) {
        if (spec.arrivals.slots() % 24 != 0)
            throw std::invalid_argument("scheme sweep needs whole days of rates");
        ctmc::ClassDemand observed{spec.arrivals, spec.departures};
        auto split = ctmc::sv_demand_profile(observed, a.subscribers, a.p_in, a.p_out, a.diversion);
        carpark::SchemeCostTable table;
        const std::size_t days = spec.arrivals.slots() / 24;
        table.r_sv.assign(days, {});
        table.r_pv.assign(days, {});
        for (double rho = a.rho_step; rho <= 1.0 + 1e-9; rho += a.rho_step) {
            auto scheme = ctmc::make_scheme(std::min(rho, 1.0), spec.capacity);
            auto rej = ctmc::scheme_rejections(spec.capacity, scheme, split.pv, split.sv,
                                               spec.epoch_hours);
            table.rho.push_back(scheme.rho);
            table.spaces_sv.push_back(scheme.sv_capacity);
            for (std::size_t d = 0; d < days; ++d) {
                table.r_pv[d].push_back(rej.pv_daily[d]);
                table.r_sv[d].push_back(rej.sv_daily[d]);
            }
        }
        const std::string table_name = "scheme_table" + table_ext(g.format);
        carpark::write_scheme_table(g.out(table_name).string(), table, g.format);
        manifest.outputs.push_back(table_name);
        report["schemes"] = table.schemes();
        report["days"] = days;
    }

    write_json(g.out("simulate_report.json"), report);
    manifest.outputs.push_back("simulate_report.json");
    manifest.write(g.outdir);
    return 0;
}

// ---------------------------------------------------------------------------
// optimize-partition
// ---------------------------------------------------------------------------

struct PartitionArgs {
    std::string table_path;
    carpark::PartitionOptConfig cfg;
};

int cmd_optimize_partition(const GlobalOpts& g, const PartitionArgs& a, Manifest manifest) {
    auto table = carpark::read_scheme_table_csv(a.table_path);
    auto report = carpark::compare_static_dynamic(table, a.cfg);
    json j = carpark::decision_to_json(report.dynamic_best, table);
    j["constants"] = {{"w_sv", a.cfg.w_sv},
                      {"w_pv", a.cfg.w_pv},
                      {"price_m", a.cfg.price_m},
                      {"min_revenue", a.cfg.min_revenue}};
    if (report.static_cost) {
        j["static_best"] = {{"scheme", *report.static_scheme + 1},
                            {"total_cost", *report.static_cost},
                            {"dynamic_over_static", report.cost_ratio}};
    } else {
        j["static_best"] = nullptr;
    }
    write_json(g.out("decision.json"), j);
    manifest.outputs.push_back("decision.json");
    manifest.write(g.outdir);
    return 0;
}

// ---------------------------------------------------------------------------
// allocate-rooms
// ---------------------------------------------------------------------------

struct AllocateArgs {
    std::string timetable_path;
    std::string rooms_path;
    std::string actuals_path;
    double margin = 0.0;
    int spare_capacity = 100;
    bool no_spare = false;
    bool use_enrolment = false;
};

int cmd_allocate_rooms(const GlobalOpts& g, const AllocateArgs& a, Manifest manifest) {
    auto meetings = classroom::read_timetable_csv(a.timetable_path);
    auto rooms = classroom::read_rooms_csv(a.rooms_path);
    if (!a.no_spare) rooms.push_back({"SPARE", a.spare_capacity});
    if (a.use_enrolment)
        for (auto& m : meetings) m.attendance = m.enrolment;

    std::map<std::string, double> actuals;
    if (!a.actuals_path.empty())
        for (const auto& row : csv::read_file(a.actuals_path, "course_id,actual"))
            actuals[row.fields[0]] = csv::to_double(row.fields[1], row.line);

    std::map<int, std::vector<std::size_t>> by_day;
    for (std::size_t i = 0; i < meetings.size(); ++i) by_day[meetings[i].day].push_back(i);

    json days = json::array();
    double total_cost = 0;
    std::size_t overflow_count = 0, assessed = 0;
    for (const auto& [day, idx] : by_day) {
        std::vector<classroom::CourseMeeting> day_meetings;
        for (std::size_t i : idx) day_meetings.push_back(meetings[i]);
        auto plan = classroom::allocate(day_meetings, rooms, a.margin);
        if (auto violation = classroom::verify_plan(plan, day_meetings, rooms))
            throw numerical_error("solver produced an invalid plan: " + *violation);
        json entry = classroom::plan_to_json(plan, day_meetings, rooms);
        entry["day"] = day;
        if (!actuals.empty()) {
            auto report = classroom::overflow_report(plan, day_meetings, rooms, actuals);
            entry["overflow"] = {{"fraction", report.fraction},
                                 {"count", report.overflowing.size()},
                                 {"missing_actuals", report.missing.size()}};
            overflow_count += report.overflowing.size();
            assessed += day_meetings.size() - report.missing.size();
        }
        total_cost += plan.total_cost;
        days.push_back(std::move(entry));
    }
    json out = {{"days", days}, {"total_cost", total_cost}, {"margin", a.margin}};
    if (!actuals.empty())
        out["overflow_fraction"] =
            assessed ? static_cast<double>(overflow_count) / static_cast<double>(assessed) : 0.0;
    write_json(g.out("plan.json"), out);
    manifest.outputs.push_back("plan.json");
    manifest.write(g.outdir);
    return 0;
}

// ---------------------------------------------------------------------------
// infer-queue
// ---------------------------------------------------------------------------

struct QueueArgs {
    std::string input;
    bus::QueueConfig cfg;
};

int cmd_infer_queue(const GlobalOpts& g, const QueueArgs& a, Manifest manifest) {
    auto records = bus::read_pdu_csv(a.input);
    auto series = bus::infer_queue(records, a.cfg);
    const std::string name = "queue" + table_ext(g.format);
    bus::write_queue_series(g.out(name).string(), series, g.format);
    manifest.outputs.push_back(name);

    std::size_t empty_bins = 0;
    for (const auto& est : series) empty_bins += est.sensors_reporting == 0;
    json report = {{"records", records.size()},
                   {"bins", series.size()},
                   {"bins_without_data", empty_bins},
                   {"bin_minutes", a.cfg.bin_minutes},
                   {"detect_threshold", a.cfg.detect_threshold}};
    write_json(g.out("queue_report.json"), report);
    manifest.outputs.push_back("queue_report.json");
    manifest.write(g.outdir);
    return 0;
}

// ---------------------------------------------------------------------------
// optimize-bus
// ---------------------------------------------------------------------------

struct BusArgs {
    std::string demand_path;
    std::string fleet_path;
    int smooth_window = 15;
    int buses = 0; // 0 = whole fleet
    bus::GaConfig cfg;
};

int cmd_optimize_bus(const GlobalOpts& g, const BusArgs& a, Manifest manifest) {
    auto demand = bus::read_demand_csv(a.demand_path);
    if (demand.per_minute.empty()) throw std::runtime_error("empty demand profile");
    if (a.smooth_window > 1) demand = bus::smooth_arrivals(demand, a.smooth_window);
    auto fleet = bus::read_fleet_csv(a.fleet_path);
    if (a.buses > 0 && static_cast<std::size_t>(a.buses) < fleet.size())
        fleet.capacities.resize(static_cast<std::size_t>(a.buses));
    if (fleet.size() == 0) throw std::runtime_error("empty fleet");

    bus::GaConfig cfg = a.cfg;
    cfg.seed = g.seed;
    const double t_s = demand.start_minute, t_e = demand.end_minute();
    auto result = bus::ga_optimize(demand, fleet, t_s, t_e, cfg);

    const std::string sched_name = "schedule" + table_ext(g.format);
    bus::write_schedule(g.out(sched_name).string(), result.schedule, fleet, g.format);
    manifest.outputs.push_back(sched_name);
    write_json(g.out("ga_trace.json"), bus::ga_trace_to_json(result));
    manifest.outputs.push_back("ga_trace.json");

    json report = {{"fitness", result.fitness},
                   {"total_wait", bus::total_wait(result.schedule, demand, fleet)},
                   {"avg_wait_per_passenger", bus::avg_wait_per_passenger(result.schedule, demand, fleet)},
                   {"passengers", demand.total()},
                   {"penalized", result.schedule.penalized},
                   {"generations", result.best_fitness_trace.size()}};
    write_json(g.out("bus_report.json"), report);
    manifest.outputs.push_back("bus_report.json");
    manifest.write(g.outdir);
    return 0;
}

// ---------------------------------------------------------------------------

// Pre-scan for --config so JSON values become flag defaults (flags win).
json load_config(int argc, char** argv) {
    for (int i = 1; i + 1 < argc; ++i)
        if (std::string(argv[i]) == "--config") {
            std::ifstream in(argv[i + 1]);
            if (!in) throw std::runtime_error(std::string("cannot open config ") + argv[i + 1]);
            json j;
            in >> j;
            return j;
        }
    return json::object();
}

template <typename T>
T cfg(const json& section, const std::string& key, T fallback) {
    return section.contains(key) ? section.at(key).get<T>() : fallback;
}

} // namespace

int main(int argc, char** argv) {
    json config;
    try {
        config = load_config(argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "campus: " << e.what() << '\n';
        return 2;
    }

    CLI::App app{"campus sensing, forecasting and resource-allocation toolkit"};
    app.require_subcommand(1);
    std::string config_path;
    app.add_option("--config", config_path, "JSON config file; flags override its values");

    GlobalOpts g;
    g.seed = cfg<std::uint64_t>(config, "seed", kDefaultSeed);
    std::string format = cfg<std::string>(config, "format", "csv");
    app.add_option("--seed", g.seed, "global RNG seed")->capture_default_str();
    app.add_option("--outdir", g.outdir, "output directory")->capture_default_str();
    app.add_option("--format", format, "table output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();

    // cleanse
    CleanseArgs ca;
    const json ccfg = config.value("cleanse", json::object());
    ca.cfg.dedup_lookahead = cfg(ccfg, "dedup_lookahead", ca.cfg.dedup_lookahead);
    ca.cfg.dedup_distance = cfg(ccfg, "dedup_distance", ca.cfg.dedup_distance);
    ca.cfg.ocr_threshold_entry = cfg(ccfg, "ocr_threshold_entry", ca.cfg.ocr_threshold_entry);
    ca.cfg.ocr_threshold_exit = cfg(ccfg, "ocr_threshold_exit", ca.cfg.ocr_threshold_exit);
    ca.cfg.match_distance = cfg(ccfg, "match_distance", ca.cfg.match_distance);
    ca.clusters = cfg(ccfg, "clusters", ca.clusters);
    auto* cleanse = app.add_subcommand("cleanse", "cleanse raw license-plate records");
    cleanse->add_option("--input", ca.input, "lpr.csv input")->required();
    cleanse->add_option("--dedup-lookahead", ca.cfg.dedup_lookahead,
                        "duplicate window in records")->capture_default_str();
    cleanse->add_option("--dedup-distance", ca.cfg.dedup_distance,
                        "edit-distance threshold for duplicates")->capture_default_str();
    cleanse->add_option("--ocr-entry", ca.cfg.ocr_threshold_entry,
                        "minimum entry OCR score (inclusive)")->capture_default_str();
    cleanse->add_option("--ocr-exit", ca.cfg.ocr_threshold_exit,
                        "minimum exit OCR score (inclusive)")->capture_default_str();
    cleanse->add_option("--match-distance", ca.cfg.match_distance,
                        "edit-distance threshold for entry/exit matching")->capture_default_str();
    cleanse->add_option("--clusters", ca.clusters, "user clusters (k)")->capture_default_str();

    // forecast
    ForecastArgs fa;
    const json fcfg = config.value("forecast", json::object());
    fa.mode = cfg(fcfg, "mode", fa.mode);
    fa.loss = cfg(fcfg, "loss", fa.loss);
    fa.tau = cfg(fcfg, "tau", fa.tau);
    fa.horizon_days = cfg(fcfg, "horizon_days", fa.horizon_days);
    fa.lag_days = cfg(fcfg, "lag_days", fa.lag_days);
    fa.fourier_pairs = cfg(fcfg, "fourier_pairs", fa.fourier_pairs);
    auto* fc = app.add_subcommand("forecast", "fit demand forecasting models");
    fc->add_option("--input", fa.input, "rates.csv or attendance.csv")->required();
    fc->add_option("--mode", fa.mode, "rates or attendance")
        ->check(CLI::IsMember({"rates", "attendance"}))->capture_default_str();
    fc->add_option("--loss", fa.loss, "ols, quantile or baseline")
        ->check(CLI::IsMember({"ols", "quantile", "baseline"}))->capture_default_str();
    fc->add_option("--tau", fa.tau, "quantile parameter")->capture_default_str();
    fc->add_option("--horizon-days", fa.horizon_days, "forecast horizon in days")->capture_default_str();
    fc->add_option("--lag-days", fa.lag_days, "daily seasonal lags")->capture_default_str();
    fc->add_option("--fourier-pairs", fa.fourier_pairs, "sine/cosine pairs per period")
        ->capture_default_str();
    fc->add_option("--folds", fa.folds, "expanding-window evaluation folds")->capture_default_str();
    fc->add_option("--test-len", fa.test_len, "test instances per fold")->capture_default_str();

    // simulate-carpark
    SimulateArgs sa;
    const json scfg = config.value("simulate-carpark", json::object());
    sa.rho_step = cfg(scfg, "rho_step", sa.rho_step);
    sa.subscribers = cfg(scfg, "subscribers", sa.subscribers);
    sa.p_in = cfg(scfg, "p_in", sa.p_in);
    sa.p_out = cfg(scfg, "p_out", sa.p_out);
    sa.diversion = cfg(scfg, "diversion", sa.diversion);
    auto* sim = app.add_subcommand("simulate-carpark", "transient loss-queue analysis");
    sim->add_option("--spec", sa.spec_path, "JSON chain spec")->required();
    sim->add_flag("--scheme-sweep", sa.scheme_sweep, "emit a partitioning scheme cost table");
    sim->add_option("--rho-step", sa.rho_step, "scheme grid step over [step, 1]")->capture_default_str();
    sim->add_option("--subscribers", sa.subscribers, "new shared-vehicle subscribers")
        ->capture_default_str();
    sim->add_option("--p-in", sa.p_in, "hourly subscriber entry probability")->capture_default_str();
    sim->add_option("--p-out", sa.p_out, "hourly subscriber exit probability")->capture_default_str();
    sim->add_option("--diversion", sa.diversion, "share of existing users switching to SV")
        ->capture_default_str();

    // optimize-partition
    PartitionArgs pa;
    const json pcfg = config.value("optimize-partition", json::object());
    pa.cfg.w_sv = cfg(pcfg, "w_sv", pa.cfg.w_sv);
    pa.cfg.w_pv = cfg(pcfg, "w_pv", pa.cfg.w_pv);
    pa.cfg.price_m = cfg(pcfg, "price_m", pa.cfg.price_m);
    pa.cfg.min_revenue = cfg(pcfg, "min_revenue", pa.cfg.min_revenue);
    auto* opt = app.add_subcommand("optimize-partition", "pick one partitioning scheme per day");
    opt->add_option("--table", pa.table_path, "scheme_table.csv")->required();
    opt->add_option("--w-sv", pa.cfg.w_sv, "cost per rejected shared-vehicle user")
        ->capture_default_str();
    opt->add_option("--w-pv", pa.cfg.w_pv, "cost per rejected private-vehicle user")
        ->capture_default_str();
    opt->add_option("--price-m", pa.cfg.price_m, "daily lease price per space")->capture_default_str();
    opt->add_option("--min-revenue", pa.cfg.min_revenue, "revenue floor (strict)")
        ->capture_default_str();

    // allocate-rooms
    AllocateArgs aa;
    const json acfg = config.value("allocate-rooms", json::object());
    aa.margin = cfg(acfg, "margin", aa.margin);
    aa.spare_capacity = cfg(acfg, "spare_capacity", aa.spare_capacity);
    aa.no_spare = cfg(acfg, "no_spare", aa.no_spare);
    auto* rooms = app.add_subcommand("allocate-rooms", "optimal course-to-room assignment");
    rooms->add_option("--timetable", aa.timetable_path, "timetable.csv")->required();
    rooms->add_option("--rooms", aa.rooms_path, "rooms.csv")->required();
    rooms->add_option("--actuals", aa.actuals_path, "actual attendances for the overflow report");
    rooms->add_option("--margin", aa.margin, "demand safety margin (fraction)")->capture_default_str();
    rooms->add_option("--spare-capacity", aa.spare_capacity, "capacity of the appended spare room")
        ->capture_default_str();
    rooms->add_flag("--no-spare", aa.no_spare, "do not append a spare room");
    rooms->add_flag("--use-enrolment", aa.use_enrolment, "allocate on enrolment instead of attendance");

    // infer-queue
    QueueArgs qa;
    const json qcfg = config.value("infer-queue", json::object());
    qa.cfg.bin_minutes = cfg(qcfg, "bin_minutes", qa.cfg.bin_minutes);
    qa.cfg.detect_threshold = cfg(qcfg, "detect_threshold", qa.cfg.detect_threshold);
    qa.cfg.band_low_cm = cfg(qcfg, "band_low_cm", qa.cfg.band_low_cm);
    qa.cfg.band_high_cm = cfg(qcfg, "band_high_cm", qa.cfg.band_high_cm);
    qa.cfg.persons_per_segment = cfg(qcfg, "persons_per_segment", qa.cfg.persons_per_segment);
    qa.cfg.sensor_count = cfg(qcfg, "sensor_count", qa.cfg.sensor_count);
    auto* queue = app.add_subcommand("infer-queue", "queue length from distance sensors");
    queue->add_option("--input", qa.input, "pdu.csv")->required();
    queue->add_option("--bin-minutes", qa.cfg.bin_minutes, "time bin width")->capture_default_str();
    queue->add_option("--threshold", qa.cfg.detect_threshold, "detection threshold (fraction)")
        ->capture_default_str();
    queue->add_option("--band-low", qa.cfg.band_low_cm, "positive band lower bound, cm")
        ->capture_default_str();
    queue->add_option("--band-high", qa.cfg.band_high_cm, "positive band upper bound, cm")
        ->capture_default_str();
    queue->add_option("--persons-per-segment", qa.cfg.persons_per_segment,
                      "people between adjacent sensors")->capture_default_str();
    queue->add_option("--sensors", qa.cfg.sensor_count, "number of sensors")->capture_default_str();
    bool tie_longer = cfg(qcfg, "tie_prefer_longer", false);
    queue->add_flag("--tie-longer", tie_longer, "break correction ties toward longer queues");

    // optimize-bus
    BusArgs ba;
    const json bcfg = config.value("optimize-bus", json::object());
    ba.smooth_window = cfg(bcfg, "smooth_window", ba.smooth_window);
    ba.cfg.population = cfg(bcfg, "population", ba.cfg.population);
    ba.cfg.max_generations = cfg(bcfg, "max_generations", ba.cfg.max_generations);
    ba.cfg.stall_halt = cfg(bcfg, "stall_halt", ba.cfg.stall_halt);
    ba.cfg.crossover_prob = cfg(bcfg, "crossover_prob", ba.cfg.crossover_prob);
    ba.cfg.mutation_prob = cfg(bcfg, "mutation_prob", ba.cfg.mutation_prob);
    ba.cfg.h_min = cfg(bcfg, "h_min", ba.cfg.h_min);
    ba.cfg.h_max = cfg(bcfg, "h_max", ba.cfg.h_max);
    auto* busopt = app.add_subcommand("optimize-bus", "demand-based bus dispatch schedule");
    busopt->add_option("--demand", ba.demand_path, "demand.csv")->required();
    busopt->add_option("--fleet", ba.fleet_path, "fleet.csv")->required();
    busopt->add_option("--smooth-window", ba.smooth_window,
                       "moving-average window in minutes (0 or 1 disables)")->capture_default_str();
    busopt->add_option("--buses", ba.buses, "use only the first N buses")->capture_default_str();
    busopt->add_option("--population", ba.cfg.population, "GA population")->capture_default_str();
    busopt->add_option("--generations", ba.cfg.max_generations, "GA generation cap")
        ->capture_default_str();
    busopt->add_option("--stall", ba.cfg.stall_halt, "halt after this many stalled generations")
        ->capture_default_str();
    busopt->add_option("--crossover", ba.cfg.crossover_prob, "crossover probability")
        ->capture_default_str();
    busopt->add_option("--mutation", ba.cfg.mutation_prob, "per-gene mutation probability")
        ->capture_default_str();
    busopt->add_option("--h-min", ba.cfg.h_min, "minimum headway, minutes")->capture_default_str();
    busopt->add_option("--h-max", ba.cfg.h_max, "maximum headway, minutes")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    g.format = format == "json" ? csv::TableFormat::Json : csv::TableFormat::Csv;
    qa.cfg.tie_prefer_fewer_ones = !tie_longer;

    Manifest manifest;
    manifest.seed = g.seed;
    manifest.config = config;

    // input paths are validated before any work begins
    auto require_inputs = [](const std::vector<std::string>& paths) {
        for (const auto& p : paths)
            if (!fs::exists(p)) {
                std::cerr << "campus: input not found: " << p << '\n';
                std::exit(2);
            }
    };

    try {
        fs::create_directories(g.outdir);
        if (cleanse->parsed()) {
            manifest.command = "cleanse";
            manifest.inputs = {ca.input};
            require_inputs(manifest.inputs);
            manifest.config["cleanse"] = {{"dedup_lookahead", ca.cfg.dedup_lookahead},
                                          {"dedup_distance", ca.cfg.dedup_distance},
                                          {"ocr_threshold_entry", ca.cfg.ocr_threshold_entry},
                                          {"ocr_threshold_exit", ca.cfg.ocr_threshold_exit},
                                          {"match_distance", ca.cfg.match_distance},
                                          {"clusters", ca.clusters}};
            return cmd_cleanse(g, ca, std::move(manifest));
        }
        if (fc->parsed()) {
            manifest.command = "forecast";
            manifest.inputs = {fa.input};
            require_inputs(manifest.inputs);
            manifest.config["forecast"] = {{"mode", fa.mode},       {"loss", fa.loss},
                                           {"tau", fa.tau},         {"horizon_days", fa.horizon_days},
                                           {"lag_days", fa.lag_days}, {"fourier_pairs", fa.fourier_pairs}};
            return cmd_forecast(g, fa, std::move(manifest));
        }
        if (sim->parsed()) {
            manifest.command = "simulate-carpark";
            manifest.inputs = {sa.spec_path};
            require_inputs(manifest.inputs);
            manifest.config["simulate-carpark"] = {{"scheme_sweep", sa.scheme_sweep},
                                                   {"rho_step", sa.rho_step},
                                                   {"subscribers", sa.subscribers},
                                                   {"p_in", sa.p_in},
                                                   {"p_out", sa.p_out},
                                                   {"diversion", sa.diversion}};
            return cmd_simulate_carpark(g, sa, std::move(manifest));
        }
        if (opt->parsed()) {
            manifest.command = "optimize-partition";
            manifest.inputs = {pa.table_path};
            require_inputs(manifest.inputs);
            manifest.config["optimize-partition"] = {{"w_sv", pa.cfg.w_sv},
                                                     {"w_pv", pa.cfg.w_pv},
                                                     {"price_m", pa.cfg.price_m},
                                                     {"min_revenue", pa.cfg.min_revenue}};
            return cmd_optimize_partition(g, pa, std::move(manifest));
        }
        if (rooms->parsed()) {
            manifest.command = "allocate-rooms";
            manifest.inputs = {aa.timetable_path, aa.rooms_path};
            if (!aa.actuals_path.empty()) manifest.inputs.push_back(aa.actuals_path);
            require_inputs(manifest.inputs);
            manifest.config["allocate-rooms"] = {{"margin", aa.margin},
                                                 {"spare_capacity", aa.spare_capacity},
                                                 {"no_spare", aa.no_spare},
                                                 {"use_enrolment", aa.use_enrolment}};
            return cmd_allocate_rooms(g, aa, std::move(manifest));
        }
        if (queue->parsed()) {
            manifest.command = "infer-queue";
            manifest.inputs = {qa.input};
            require_inputs(manifest.inputs);
            manifest.config["infer-queue"] = {{"bin_minutes", qa.cfg.bin_minutes},
                                              {"detect_threshold", qa.cfg.detect_threshold},
                                              {"band_low_cm", qa.cfg.band_low_cm},
                                              {"band_high_cm", qa.cfg.band_high_cm},
                                              {"persons_per_segment", qa.cfg.persons_per_segment},
                                              {"sensor_count", qa.cfg.sensor_count},
                                              {"tie_prefer_fewer_ones", qa.cfg.tie_prefer_fewer_ones}};
            return cmd_infer_queue(g, qa, std::move(manifest));
        }
        if (busopt->parsed()) {
            manifest.command = "optimize-bus";
            manifest.inputs = {ba.demand_path, ba.fleet_path};
            require_inputs(manifest.inputs);
            manifest.config["optimize-bus"] = {{"smooth_window", ba.smooth_window},
                                               {"buses", ba.buses},
                                               {"population", ba.cfg.population},
                                               {"max_generations", ba.cfg.max_generations},
                                               {"stall_halt", ba.cfg.stall_halt},
                                               {"crossover_prob", ba.cfg.crossover_prob},
                                               {"mutation_prob", ba.cfg.mutation_prob},
                                               {"h_min", ba.cfg.h_min},
                                               {"h_max", ba.cfg.h_max}};
            return cmd_optimize_bus(g, ba, std::move(manifest));
        }
    } catch (const parse_error& e) {
        std::cerr << "campus: " << e.what() << '\n';
        return 2;
    } catch (const infeasible_error& e) {
        std::cerr << "campus: infeasible: " << e.what() << '\n';
        return 3;
    } catch (const numerical_error& e) {
        std::cerr << "campus: numerical failure: " << e.what() << '\n';
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "campus: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
