#pragma once

#include <cstddef>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "campus/common/errors.hpp"

namespace campus::csv {

enum class TableFormat { Csv, Json };

struct Row {
    std::vector<std::string> fields;
    std::size_t line = 0; // 1-based line number in the source file
};

inline std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

inline std::string join(const std::vector<std::string>& fields) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out.push_back(',');
        out += fields[i];
    }
    return out;
}

// Reads a CSV file whose first line must match `header` exactly.
// Blank lines are skipped; every remaining row must have as many fields
// as the header.
inline std::vector<Row> read_file(const std::string& path, const std::string& header) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);

    const std::size_t n_fields = split_line(header).size();
    std::vector<Row> rows;
    std::string line;
    std::size_t lineno = 0;
    bool saw_header = false;
    while (std::getline(in, line)) {
        ++lineno;
        while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
        if (line.empty()) continue;
        if (!saw_header) {
            if (line != header)
                throw parse_error("expected header '" + header + "', got '" + line + "'", lineno);
            saw_header = true;
            continue;
        }
        Row row{split_line(line), lineno};
        if (row.fields.size() != n_fields)
            throw parse_error("expected " + std::to_string(n_fields) + " fields, got " +
                                  std::to_string(row.fields.size()),
                              lineno);
        rows.push_back(std::move(row));
    }
    if (!saw_header) throw parse_error("missing header '" + header + "'", lineno ? lineno : 1);
    return rows;
}

inline void write_file(const std::string& path, const std::string& header,
                       const std::vector<std::vector<std::string>>& rows) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << header << '\n';
    for (const auto& r : rows) out << join(r) << '\n';
}

// Same table as JSON: an array of objects keyed by the header, with
// numeric-looking fields emitted as numbers.
inline void write_file_json(const std::string& path, const std::string& header,
                            const std::vector<std::vector<std::string>>& rows) {
    const auto keys = split_line(header);
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : rows) {
        nlohmann::json obj = nlohmann::json::object();
        for (std::size_t i = 0; i < keys.size() && i < r.size(); ++i) {
            std::size_t pos = 0;
            bool numeric = !r[i].empty();
            double v = 0;
            if (numeric) {
                try {
                    v = std::stod(r[i], &pos);
                    numeric = pos == r[i].size();
                } catch (const std::exception&) {
                    numeric = false;
                }
            }
            if (numeric)
                obj[keys[i]] = v;
            else
                obj[keys[i]] = r[i];
        }
        arr.push_back(std::move(obj));
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << arr.dump(2) << '\n';
}

inline void write_table(const std::string& path, const std::string& header,
                        const std::vector<std::vector<std::string>>& rows, TableFormat format) {
    if (format == TableFormat::Csv)
        write_file(path, header, rows);
    else
        write_file_json(path, header, rows);
}

inline double to_double(const std::string& s, std::size_t line) {
    try {
        std::size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw parse_error("not a number: '" + s + "'", line);
    }
}

inline long long to_int(const std::string& s, std::size_t line) {
    try {
        std::size_t pos = 0;
        long long v = std::stoll(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw parse_error("not an integer: '" + s + "'", line);
    }
}

inline std::string format_double(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

} // namespace campus::csv
