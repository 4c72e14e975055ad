#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "campus/bus/ga.hpp"
#include "campus/bus/queue.hpp"
#include "campus/bus/wait.hpp"
#include "campus/common/csv.hpp"
#include "campus/common/civil_time.hpp"

namespace campus::bus {

inline const char* kPduHeader = "timestamp,sensor_position,distance_cm";

// An empty distance field means the echo never came back.
inline std::vector<PduRecord> read_pdu_csv(const std::string& path) {
    std::vector<PduRecord> out;
    for (const auto& row : csv::read_file(path, kPduHeader)) {
        PduRecord r;
        r.timestamp = civil::parse_timestamp(row.fields[0], row.line);
        r.sensor_position = static_cast<int>(csv::to_int(row.fields[1], row.line));
        if (!row.fields[2].empty()) {
            const double d = csv::to_double(row.fields[2], row.line);
            if (d < 0 || d > 510) throw parse_error("distance outside 0-510 cm", row.line);
            r.distance_cm = d;
        }
        out.push_back(r);
    }
    return out;
}

inline void write_queue_series(const std::string& path, const std::vector<QueueEstimate>& series,
                               csv::TableFormat format = csv::TableFormat::Csv) {
    std::vector<std::vector<std::string>> rows;
    rows.reserve(series.size());
    for (const auto& est : series)
        rows.push_back({civil::format_timestamp(est.bin_start), std::to_string(est.length_persons),
                        code_to_string(est.code)});
    csv::write_table(path, "bin_start,queue_length,bits_string", rows, format);
}

inline DemandProfile read_demand_csv(const std::string& path) {
    DemandProfile demand;
    std::vector<std::pair<long long, double>> entries;
    for (const auto& row : csv::read_file(path, "minute_offset,arrivals")) {
        const long long minute = csv::to_int(row.fields[0], row.line);
        const double arrivals = csv::to_double(row.fields[1], row.line);
        if (arrivals < 0) throw parse_error("negative arrival count", row.line);
        entries.emplace_back(minute, arrivals);
    }
    if (entries.empty()) return demand;
    long long lo = entries.front().first, hi = entries.front().first;
    for (const auto& [minute, _] : entries) {
        lo = std::min(lo, minute);
        hi = std::max(hi, minute);
    }
    demand.start_minute = static_cast<double>(lo);
    demand.per_minute.assign(static_cast<std::size_t>(hi - lo + 1), 0.0);
    for (const auto& [minute, arrivals] : entries)
        demand.per_minute[static_cast<std::size_t>(minute - lo)] += arrivals;
    return demand;
}

inline BusFleet read_fleet_csv(const std::string& path) {
    std::vector<std::pair<long long, double>> rows;
    for (const auto& row : csv::read_file(path, "order,capacity")) {
        const double cap = csv::to_double(row.fields[1], row.line);
        if (cap <= 0) throw parse_error("capacity must be positive", row.line);
        rows.emplace_back(csv::to_int(row.fields[0], row.line), cap);
    }
    std::sort(rows.begin(), rows.end());
    BusFleet fleet;
    for (const auto& [_, cap] : rows) fleet.capacities.push_back(cap);
    return fleet;
}

inline void write_schedule(const std::string& path, const BusSchedule& schedule,
                           const BusFleet& fleet,
                           csv::TableFormat format = csv::TableFormat::Csv) {
    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 0; i < schedule.dispatch_minutes.size(); ++i)
        rows.push_back({csv::format_double(schedule.dispatch_minutes[i]),
                        csv::format_double(fleet.capacities[i])});
    csv::write_table(path, "dispatch_time,capacity", rows, format);
}

inline BusSchedule read_schedule_csv(const std::string& path, double window_start,
                                     BusFleet* fleet_out = nullptr) {
    BusSchedule schedule;
    schedule.window_start = window_start;
    for (const auto& row : csv::read_file(path, "dispatch_time,capacity")) {
        schedule.dispatch_minutes.push_back(csv::to_double(row.fields[0], row.line));
        if (fleet_out) fleet_out->capacities.push_back(csv::to_double(row.fields[1], row.line));
    }
    if (!schedule.dispatch_minutes.empty()) schedule.window_end = schedule.dispatch_minutes.back();
    return schedule;
}

inline nlohmann::json ga_trace_to_json(const GaResult& result) {
    nlohmann::json trace = nlohmann::json::array();
    for (std::size_t g = 0; g < result.best_fitness_trace.size(); ++g)
        trace.push_back({{"generation", g + 1}, {"best_fitness", result.best_fitness_trace[g]}});
    return trace;
}

} // namespace campus::bus
