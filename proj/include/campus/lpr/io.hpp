#pragma once

#include <string>
#include <vector>

#include "campus/common/csv.hpp"
#include "campus/common/civil_time.hpp"
#include "campus/lpr/kmeans.hpp"
#include "campus/lpr/record.hpp"
#include "campus/rates.hpp"

namespace campus::lpr {

inline const char* kLprHeader = "timestamp,plate_string,ocr_score,read_flag,direction";

inline std::vector<PlateRecord> read_lpr_csv(const std::string& path) {
    std::vector<PlateRecord> out;
    for (const auto& row : csv::read_file(path, kLprHeader)) {
        PlateRecord r;
        r.timestamp = civil::parse_timestamp(row.fields[0], row.line);
        r.plate = row.fields[1];
        const long long score = csv::to_int(row.fields[2], row.line);
        if (score < 0 || score > 100)
            throw parse_error("ocr_score out of [0,100]: " + row.fields[2], row.line);
        r.ocr_score = static_cast<int>(score);
        if (row.fields[3] == "READ")
            r.read_flag = ReadFlag::Read;
        else if (row.fields[3] == "NOTREAD")
            r.read_flag = ReadFlag::NotRead;
        else
            throw parse_error("unknown read_flag '" + row.fields[3] + "'", row.line);
        if (row.fields[4] == "ENTRY")
            r.direction = Direction::Entry;
        else if (row.fields[4] == "EXIT")
            r.direction = Direction::Exit;
        else
            throw parse_error("unknown direction '" + row.fields[4] + "'", row.line);
        out.push_back(std::move(r));
    }
    return out;
}

inline void write_stays(const std::string& path, const std::vector<StayRecord>& stays,
                        csv::TableFormat format = csv::TableFormat::Csv) {
    std::vector<std::vector<std::string>> rows;
    rows.reserve(stays.size());
    for (const auto& s : stays)
        rows.push_back({civil::format_timestamp(s.entry_time), civil::format_timestamp(s.exit_time),
                        csv::format_double(s.stay_hours())});
    csv::write_table(path, "entry_time,exit_time,stay_hours", rows, format);
}

inline void write_rates(const std::string& path, const RateProfile& arrivals,
                        const RateProfile& departures,
                        csv::TableFormat format = csv::TableFormat::Csv) {
    std::vector<std::vector<std::string>> rows;
    for (std::size_t k = 0; k < arrivals.slots(); ++k) {
        const std::int64_t slot_start = arrivals.horizon_start + static_cast<std::int64_t>(k) * 3600;
        const double dep = k < departures.slots() ? departures.values[k] : 0.0;
        rows.push_back({civil::format_timestamp(slot_start), csv::format_double(arrivals.values[k]),
                        csv::format_double(dep)});
    }
    csv::write_table(path, "slot_start,arrivals,departures", rows, format);
}

inline std::pair<RateProfile, RateProfile> read_rates_csv(const std::string& path) {
    RateProfile arrivals, departures;
    bool first = true;
    for (const auto& row : csv::read_file(path, "slot_start,arrivals,departures")) {
        const std::int64_t ts = civil::parse_timestamp(row.fields[0], row.line);
        if (first) {
            arrivals.horizon_start = departures.horizon_start = ts;
            first = false;
        }
        arrivals.values.push_back(csv::to_double(row.fields[1], row.line));
        departures.values.push_back(csv::to_double(row.fields[2], row.line));
    }
    return {arrivals, departures};
}

inline void write_clusters(const std::string& path, const std::vector<UserCluster>& clusters,
                           csv::TableFormat format = csv::TableFormat::Csv) {
    std::vector<std::vector<std::string>> rows;
    for (std::size_t c = 0; c < clusters.size(); ++c)
        rows.push_back({std::to_string(c + 1), csv::format_double(clusters[c].center[0]),
                        csv::format_double(clusters[c].center[1]),
                        csv::format_double(clusters[c].center[2]),
                        std::to_string(clusters[c].members.size()),
                        csv::format_double(clusters[c].inertia)});
    csv::write_table(path, "cluster,arrival_hour,departure_hour,stay_hours,size,inertia", rows, format);
}

} // namespace campus::lpr
