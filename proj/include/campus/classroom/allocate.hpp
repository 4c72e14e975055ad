#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "campus/classroom/occupancy.hpp"
#include "campus/common/errors.hpp"

namespace campus::classroom {

// A room's cost per occupied slot equals its capacity.
struct Room {
    std::string id;
    int capacity = 0;
};

struct AllocationPlan {
    std::vector<int> room_by_meeting;   // index into the room list, one per meeting
    std::vector<int> demand_by_meeting; // seats requested after the margin
    double total_cost = 0;              // J = sum over occupied (room, slot) of capacity
    std::vector<std::vector<int>> grid; // [room][slot] -> meeting index or -1
};

// One-day optimal course-to-room assignment. Demands are
// ceil(attendance * (1 + margin)); the cost of a plan is the sum over
// meetings of duration * capacity of the assigned room. Exact depth-first
// branch and bound in meeting order with rooms tried in index order, pruned
// by remaining-duration * cheapest-feasible-room bounds; only strict
// improvements replace the incumbent, so ties resolve to the
// lexicographically smallest assignment vector.
inline AllocationPlan allocate(const std::vector<CourseMeeting>& meetings,
                               const std::vector<Room>& rooms, double margin = 0.0,
                               int slots_per_day = kSlotsPerDay) {
    if (margin < 0) throw std::invalid_argument("margin must be non-negative");
    for (const auto& room : rooms)
        if (room.capacity <= 0) throw std::invalid_argument("room capacity must be positive");

    const std::size_t n = meetings.size(), m = rooms.size();
    std::vector<int> demand(n);
    std::vector<double> cheapest(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& meeting = meetings[i];
        if (meeting.start_slot < 1 || meeting.duration_slots < 1 ||
            meeting.start_slot + meeting.duration_slots - 1 > slots_per_day)
            throw std::invalid_argument("meeting '" + meeting.course_id +
                                        "' does not fit the slot grid");
        // the epsilon keeps ceil from inflating exact products (100 * 1.1 -> 111)
        demand[i] = static_cast<int>(std::ceil(meeting.attendance * (1.0 + margin) - 1e-9));
        int best = std::numeric_limits<int>::max();
        for (const auto& room : rooms)
            if (room.capacity >= demand[i]) best = std::min(best, room.capacity);
        if (best == std::numeric_limits<int>::max())
            throw infeasible_error("meeting '" + meeting.course_id + "' needs " +
                                   std::to_string(demand[i]) + " seats but no room is large enough");
        cheapest[i] = static_cast<double>(best) * meeting.duration_slots;
    }
    std::vector<double> bound_suffix(n + 1, 0);
    for (std::size_t i = n; i-- > 0;) bound_suffix[i] = bound_suffix[i + 1] + cheapest[i];

    std::vector<std::vector<bool>> busy(m, std::vector<bool>(slots_per_day, false));
    std::vector<int> current(n, -1);
    AllocationPlan best_plan;
    double best_cost = std::numeric_limits<double>::infinity();
    std::size_t deepest_blocked = 0;
    bool found = false;

    auto dfs = [&](auto&& self, std::size_t i, double cost) -> void {
        if (cost + bound_suffix[i] >= best_cost) return;
        if (i == n) {
            best_plan.room_by_meeting = current;
            best_cost = cost;
            found = true;
            return;
        }
        const auto& meeting = meetings[i];
        const int first = meeting.start_slot - 1;
        const int last = first + meeting.duration_slots; // exclusive
        bool any = false;
        for (std::size_t j = 0; j < m; ++j) {
            if (rooms[j].capacity < demand[i]) continue;
            bool free = true;
            for (int s = first; s < last && free; ++s) free = !busy[j][s];
            if (!free) continue;
            any = true;
            for (int s = first; s < last; ++s) busy[j][s] = true;
            current[i] = static_cast<int>(j);
            self(self, i + 1, cost + static_cast<double>(rooms[j].capacity) * meeting.duration_slots);
            current[i] = -1;
            for (int s = first; s < last; ++s) busy[j][s] = false;
        }
        if (!any) deepest_blocked = std::max(deepest_blocked, i);
    };
    dfs(dfs, 0, 0.0);

    if (!found)
        throw infeasible_error("no conflict-free assignment exists; meeting '" +
                               meetings[deepest_blocked].course_id +
                               "' has no free room of sufficient capacity");

    best_plan.total_cost = best_cost;
    best_plan.demand_by_meeting = demand;
    best_plan.grid.assign(m, std::vector<int>(slots_per_day, -1));
    for (std::size_t i = 0; i < n; ++i)
        for (int s = meetings[i].start_slot - 1; s < meetings[i].start_slot - 1 + meetings[i].duration_slots; ++s)
            best_plan.grid[best_plan.room_by_meeting[i]][s] = static_cast<int>(i);
    return best_plan;
}

// Independent validity check, deliberately sharing no state with the solver.
// Returns an explanation of the first violated constraint, or nullopt.
inline std::optional<std::string> verify_plan(const AllocationPlan& plan,
                                              const std::vector<CourseMeeting>& meetings,
                                              const std::vector<Room>& rooms,
                                              int slots_per_day = kSlotsPerDay) {
    if (plan.room_by_meeting.size() != meetings.size())
        return "plan does not assign every meeting exactly one room";
    std::map<std::pair<int, int>, int> occupied; // (room, slot) -> meeting
    double cost = 0;
    for (std::size_t i = 0; i < meetings.size(); ++i) {
        const int j = plan.room_by_meeting[i];
        if (j < 0 || static_cast<std::size_t>(j) >= rooms.size())
            return "meeting '" + meetings[i].course_id + "' has an invalid room index";
        if (plan.demand_by_meeting[i] > rooms[j].capacity)
            return "meeting '" + meetings[i].course_id + "' exceeds the capacity of room '" +
                   rooms[j].id + "'";
        for (int s = meetings[i].start_slot; s < meetings[i].start_slot + meetings[i].duration_slots; ++s) {
            if (s < 1 || s > slots_per_day) return "meeting slot outside the day grid";
            auto [it, inserted] = occupied.try_emplace({j, s}, static_cast<int>(i));
            if (!inserted)
                return "room '" + rooms[j].id + "' double-booked at slot " + std::to_string(s);
        }
        cost += static_cast<double>(rooms[j].capacity) * meetings[i].duration_slots;
    }
    if (std::abs(cost - plan.total_cost) > 1e-9) return "plan cost does not match its assignment";
    return std::nullopt;
}

struct OverflowReport {
    double fraction = 0;                  // overflowing / assessed meetings
    std::vector<std::size_t> overflowing; // meeting indices
    std::vector<std::size_t> missing;     // meetings without an actual attendance
};

// A meeting overflows when its actual attendance exceeds the capacity of the
// room the plan gave it. Meetings without actuals are excluded and reported.
inline OverflowReport overflow_report(const AllocationPlan& plan,
                                      const std::vector<CourseMeeting>& meetings,
                                      const std::vector<Room>& rooms,
                                      const std::map<std::string, double>& actual_attendance) {
    OverflowReport report;
    std::size_t assessed = 0;
    for (std::size_t i = 0; i < meetings.size(); ++i) {
        auto it = actual_attendance.find(meetings[i].course_id);
        if (it == actual_attendance.end()) {
            report.missing.push_back(i);
            continue;
        }
        ++assessed;
        if (it->second > rooms[plan.room_by_meeting[i]].capacity) report.overflowing.push_back(i);
    }
    if (assessed > 0)
        report.fraction = static_cast<double>(report.overflowing.size()) / static_cast<double>(assessed);
    return report;
}

} // namespace campus::classroom
