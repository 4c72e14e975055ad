#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "campus/common/civil_time.hpp"

namespace campus::classroom {

// One doorway-counter report: entries and exits seen during its interval.
struct CountRecord {
    std::int64_t timestamp = 0;
    std::string room;
    int count_in = 0;
    int count_out = 0;
};

// A scheduled course meeting. Slots are hours; slot 1 starts the teaching day
// (9am in the deployed timetable, 12 slots to 9pm).
struct CourseMeeting {
    std::string course_id;
    int day = 0;            // day index within the planning horizon
    int start_slot = 1;     // 1-based
    int duration_slots = 1;
    double attendance = 0;  // demand estimate o_i (predicted or measured)
    int enrolment = 0;
};

constexpr int kSlotsPerDay = 12;
constexpr int kFirstSlotHour = 9; // slot 1 = 09:00-10:00

// Room-based occupancy: running sum of entries minus exits over one civil
// day, reset at midnight and clamped at zero (entry undercounts would
// otherwise drive it negative). Records must belong to a single room and be
// time-sorted; returns (timestamp, occupancy-after-record) points.
inline std::vector<std::pair<std::int64_t, int>> room_occupancy(
    const std::vector<CountRecord>& records, std::int64_t day_index) {
    std::vector<std::pair<std::int64_t, int>> series;
    int occupancy = 0;
    for (const auto& r : records) {
        if (civil::day_index(r.timestamp) != day_index) continue;
        occupancy = std::max(0, occupancy + r.count_in - r.count_out);
        series.emplace_back(r.timestamp, occupancy);
    }
    return series;
}

namespace detail {

inline std::pair<std::int64_t, std::int64_t> meeting_window(const CourseMeeting& m,
                                                            int slack_minutes) {
    const std::int64_t day_start = static_cast<std::int64_t>(m.day) * civil::kSecondsPerDay;
    const std::int64_t start =
        day_start + (kFirstSlotHour + m.start_slot - 1) * civil::kSecondsPerHour;
    const std::int64_t end = start + static_cast<std::int64_t>(m.duration_slots) * civil::kSecondsPerHour;
    return {start - slack_minutes * 60, end + slack_minutes * 60};
}

} // namespace detail

// Course-based attendance: the maximum of the running entry/exit sum within
// the meeting window widened by `slack_minutes` on both sides, counted from
// zero so errors do not carry over between meetings. Throws when another
// meeting of the same room overlaps the widened window.
inline int course_attendance(const std::vector<CountRecord>& room_records, const CourseMeeting& meeting,
                             const std::vector<CourseMeeting>& same_room_meetings = {},
                             int slack_minutes = 10) {
    if (meeting.start_slot < 1 || meeting.duration_slots < 1 ||
        meeting.start_slot + meeting.duration_slots - 1 > kSlotsPerDay)
        throw std::invalid_argument("meeting does not fit the slot grid");
    const auto [begin, end] = detail::meeting_window(meeting, slack_minutes);
    for (const auto& other : same_room_meetings) {
        if (other.course_id == meeting.course_id && other.day == meeting.day &&
            other.start_slot == meeting.start_slot)
            continue;
        const auto [ob, oe] = detail::meeting_window(other, slack_minutes);
        if (begin < oe && ob < end)
            throw std::invalid_argument("timetable conflict: meetings of courses '" +
                                        meeting.course_id + "' and '" + other.course_id +
                                        "' overlap in the same room");
    }
    int running = 0, peak = 0;
    for (const auto& r : room_records) {
        if (r.timestamp < begin || r.timestamp >= end) continue;
        running += r.count_in - r.count_out;
        peak = std::max(peak, running);
    }
    return peak;
}

// Ratio of attendance to enrolment, capped at 1; zero attendance or a ratio
// above 1.5 marks the observation as dropped (cancelled class / over-count).
inline std::optional<double> normalize_attendance(double attendance, int enrolment) {
    if (enrolment <= 0) throw std::invalid_argument("enrolment must be positive");
    const double ratio = attendance / enrolment;
    if (ratio < 0) throw std::invalid_argument("negative attendance");
    if (ratio == 0.0 || ratio > 1.5) return std::nullopt;
    return std::min(ratio, 1.0);
}

} // namespace campus::classroom
