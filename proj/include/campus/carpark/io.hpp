#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "campus/carpark/optimize.hpp"
#include "campus/common/csv.hpp"

namespace campus::carpark {

inline const char* kSchemeTableHeader = "day,scheme,rho,spaces_sv,r_pv,r_sv";

// scheme_table.csv uses 1-based day and scheme numbers; every (day, scheme)
// pair must appear exactly once.
inline SchemeCostTable read_scheme_table_csv(const std::string& path) {
    struct Cell {
        double rho, r_pv, r_sv;
        int spaces;
        bool seen = false;
    };
    std::size_t days = 0, schemes = 0;
    std::vector<csv::Row> rows = csv::read_file(path, kSchemeTableHeader);
    for (const auto& row : rows) {
        days = std::max(days, static_cast<std::size_t>(csv::to_int(row.fields[0], row.line)));
        schemes = std::max(schemes, static_cast<std::size_t>(csv::to_int(row.fields[1], row.line)));
    }
    std::vector<Cell> cells(days * schemes);
    for (const auto& row : rows) {
        const long long day = csv::to_int(row.fields[0], row.line);
        const long long scheme = csv::to_int(row.fields[1], row.line);
        if (day < 1 || scheme < 1) throw parse_error("day and scheme numbers are 1-based", row.line);
        Cell& cell = cells[(day - 1) * schemes + (scheme - 1)];
        if (cell.seen) throw parse_error("duplicate (day, scheme) pair", row.line);
        cell = {csv::to_double(row.fields[2], row.line), csv::to_double(row.fields[4], row.line),
                csv::to_double(row.fields[5], row.line),
                static_cast<int>(csv::to_int(row.fields[3], row.line)), true};
    }

    SchemeCostTable table;
    table.spaces_sv.resize(schemes);
    table.rho.resize(schemes);
    table.r_sv.assign(days, std::vector<double>(schemes));
    table.r_pv.assign(days, std::vector<double>(schemes));
    for (std::size_t i = 0; i < days; ++i)
        for (std::size_t j = 0; j < schemes; ++j) {
            const Cell& cell = cells[i * schemes + j];
            if (!cell.seen)
                throw std::runtime_error("scheme table is missing day " + std::to_string(i + 1) +
                                         ", scheme " + std::to_string(j + 1));
            table.r_sv[i][j] = cell.r_sv;
            table.r_pv[i][j] = cell.r_pv;
            table.spaces_sv[j] = cell.spaces;
            table.rho[j] = cell.rho;
        }
    table.validate();
    return table;
}

inline void write_scheme_table(const std::string& path, const SchemeCostTable& table,
                               csv::TableFormat format = csv::TableFormat::Csv) {
    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 0; i < table.days(); ++i)
        for (std::size_t j = 0; j < table.schemes(); ++j)
            rows.push_back({std::to_string(i + 1), std::to_string(j + 1),
                            csv::format_double(table.rho.empty() ? 0.0 : table.rho[j]),
                            std::to_string(table.spaces_sv[j]), csv::format_double(table.r_pv[i][j]),
                            csv::format_double(table.r_sv[i][j])});
    csv::write_table(path, kSchemeTableHeader, rows, format);
}

inline nlohmann::json decision_to_json(const PartitionDecision& decision,
                                       const SchemeCostTable& table) {
    nlohmann::json j;
    nlohmann::json days = nlohmann::json::array();
    for (std::size_t i = 0; i < decision.scheme_by_day.size(); ++i) {
        const int s = decision.scheme_by_day[i];
        days.push_back({{"day", i + 1},
                        {"scheme", s + 1},
                        {"rho", table.rho.empty() ? 0.0 : table.rho[s]},
                        {"spaces_sv", table.spaces_sv[s]}});
    }
    j["decision"] = days;
    j["total_cost"] = decision.total_cost;
    j["revenue"] = decision.revenue;
    return j;
}

} // namespace campus::carpark
