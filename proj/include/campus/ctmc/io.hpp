#pragma once

#include <fstream>
#include <string>

#include <nlohmann/json.hpp>

#include "campus/common/csv.hpp"
#include "campus/common/civil_time.hpp"
#include "campus/ctmc/birth_death.hpp"

namespace campus::ctmc {

// JSON spec: {"capacity": C, "epoch_minutes": 5, "arrivals": [...], "departures": [...],
//             "horizon_start": "YYYY-MM-DD HH:MM:SS" (optional)}
inline BirthDeathSpec spec_from_json(const nlohmann::json& j) {
    BirthDeathSpec spec;
    spec.capacity = j.at("capacity").get<int>();
    spec.epoch_hours = j.at("epoch_minutes").get<double>() / 60.0;
    spec.arrivals.values = j.at("arrivals").get<std::vector<double>>();
    spec.departures.values = j.at("departures").get<std::vector<double>>();
    if (j.contains("horizon_start")) {
        const auto ts = civil::parse_timestamp(j.at("horizon_start").get<std::string>());
        spec.arrivals.horizon_start = spec.departures.horizon_start = ts;
    }
    spec.validate();
    return spec;
}

inline BirthDeathSpec read_spec_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    nlohmann::json j;
    in >> j;
    return spec_from_json(j);
}

inline void write_trace(const std::string& path, const BirthDeathSpec& spec, const DayTrace& trace,
                        csv::TableFormat format = csv::TableFormat::Csv) {
    std::vector<std::vector<std::string>> rows;
    const auto epoch_seconds = static_cast<std::int64_t>(std::llround(spec.epoch_hours * 3600));
    for (std::size_t e = 0; e < trace.rejections.size(); ++e) {
        const std::int64_t start =
            spec.arrivals.horizon_start + static_cast<std::int64_t>(e) * epoch_seconds;
        rows.push_back({civil::format_timestamp(start),
                        csv::format_double(trace.distributions[e].back()),
                        csv::format_double(trace.rejections[e])});
    }
    csv::write_table(path, "epoch_start,p_full,expected_rejections", rows, format);
}

} // namespace campus::ctmc
