#pragma once

#include <fstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "campus/common/csv.hpp"
#include "campus/forecast/linear.hpp"

namespace campus::forecast {

inline nlohmann::json model_to_json(const LinearModel& model) {
    nlohmann::json j;
    j["loss"] = model.loss == LossKind::Quantile ? "quantile" : "squared_error";
    if (model.loss == LossKind::Quantile) j["tau"] = model.tau;
    j["ridge_fallback_used"] = model.ridge_fallback_used;
    nlohmann::json coefs = nlohmann::json::object();
    for (long i = 0; i < model.coef.size(); ++i)
        coefs[model.feature_names[static_cast<std::size_t>(i)]] = model.coef(i);
    j["coefficients"] = coefs;
    j["feature_order"] = model.feature_names;
    return j;
}

inline LinearModel model_from_json(const nlohmann::json& j) {
    LinearModel model;
    model.loss = j.at("loss") == "quantile" ? LossKind::Quantile : LossKind::SquaredError;
    if (model.loss == LossKind::Quantile) model.tau = j.at("tau").get<double>();
    model.ridge_fallback_used = j.value("ridge_fallback_used", false);
    model.feature_names = j.at("feature_order").get<std::vector<std::string>>();
    model.coef.resize(static_cast<long>(model.feature_names.size()));
    for (std::size_t i = 0; i < model.feature_names.size(); ++i)
        model.coef(static_cast<long>(i)) = j.at("coefficients").at(model.feature_names[i]).get<double>();
    return model;
}

// One row of the released attendance dataset.
struct AttendanceRow {
    int week = 0;
    std::string room;
    int seats = 0;
    std::string course_id;
    int start_hour = 0; // 24h clock
    int end_hour = 0;
    int enrolment = 0;
    double attendance = 0;
};

inline const char* kAttendanceHeader = "week,room,seats,course_id,start,end,enrolment,attendance";

inline std::vector<AttendanceRow> read_attendance_csv(const std::string& path) {
    std::vector<AttendanceRow> out;
    for (const auto& row : csv::read_file(path, kAttendanceHeader)) {
        AttendanceRow r;
        r.week = static_cast<int>(csv::to_int(row.fields[0], row.line));
        r.room = row.fields[1];
        r.seats = static_cast<int>(csv::to_int(row.fields[2], row.line));
        r.course_id = row.fields[3];
        r.start_hour = static_cast<int>(csv::to_int(row.fields[4], row.line));
        r.end_hour = static_cast<int>(csv::to_int(row.fields[5], row.line));
        r.enrolment = static_cast<int>(csv::to_int(row.fields[6], row.line));
        r.attendance = csv::to_double(row.fields[7], row.line);
        if (r.end_hour < r.start_hour)
            throw parse_error("course ends before it starts", row.line);
        out.push_back(std::move(r));
    }
    return out;
}

} // namespace campus::forecast
