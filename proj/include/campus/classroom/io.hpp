#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "campus/classroom/allocate.hpp"
#include "campus/common/csv.hpp"

namespace campus::classroom {

inline const char* kTimetableHeader =
    "course_id,day,start_slot,duration_slots,enrolment,predicted_attendance";
inline const char* kRoomsHeader = "room_id,capacity";

inline std::vector<CourseMeeting> read_timetable_csv(const std::string& path) {
    std::vector<CourseMeeting> out;
    for (const auto& row : csv::read_file(path, kTimetableHeader)) {
        CourseMeeting m;
        m.course_id = row.fields[0];
        m.day = static_cast<int>(csv::to_int(row.fields[1], row.line));
        m.start_slot = static_cast<int>(csv::to_int(row.fields[2], row.line));
        m.duration_slots = static_cast<int>(csv::to_int(row.fields[3], row.line));
        m.enrolment = static_cast<int>(csv::to_int(row.fields[4], row.line));
        m.attendance = csv::to_double(row.fields[5], row.line);
        if (m.start_slot < 1 || m.duration_slots < 1 ||
            m.start_slot + m.duration_slots - 1 > kSlotsPerDay)
            throw parse_error("meeting does not fit the 12-slot day", row.line);
        out.push_back(std::move(m));
    }
    return out;
}

inline std::vector<Room> read_rooms_csv(const std::string& path) {
    std::vector<Room> out;
    for (const auto& row : csv::read_file(path, kRoomsHeader)) {
        Room r{row.fields[0], static_cast<int>(csv::to_int(row.fields[1], row.line))};
        if (r.capacity <= 0) throw parse_error("capacity must be positive", row.line);
        out.push_back(std::move(r));
    }
    return out;
}

inline nlohmann::json plan_to_json(const AllocationPlan& plan,
                                   const std::vector<CourseMeeting>& meetings,
                                   const std::vector<Room>& rooms, int slots_per_day = kSlotsPerDay) {
    nlohmann::json assignments = nlohmann::json::array();
    for (std::size_t i = 0; i < meetings.size(); ++i)
        assignments.push_back({{"course_id", meetings[i].course_id},
                               {"room_id", rooms[plan.room_by_meeting[i]].id},
                               {"start_slot", meetings[i].start_slot},
                               {"duration_slots", meetings[i].duration_slots},
                               {"demand", plan.demand_by_meeting[i]},
                               {"capacity", rooms[plan.room_by_meeting[i]].capacity}});
    nlohmann::json grid = nlohmann::json::object();
    for (std::size_t j = 0; j < rooms.size(); ++j) {
        nlohmann::json slots = nlohmann::json::array();
        for (int s = 0; s < slots_per_day; ++s) {
            const int idx = plan.grid[j][s];
            slots.push_back(idx < 0 ? nlohmann::json(nullptr)
                                    : nlohmann::json(meetings[static_cast<std::size_t>(idx)].course_id));
        }
        grid[rooms[j].id] = slots;
    }
    return {{"assignments", assignments}, {"grid", grid}, {"total_cost", plan.total_cost}};
}

} // namespace campus::classroom
