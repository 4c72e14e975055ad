#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace campus::bus {

// Passenger arrivals per minute over [start_minute, start_minute + size).
// per_minute[i] is the number of passengers arriving during that minute,
// treated as arriving at its midpoint.
struct DemandProfile {
    double start_minute = 0;
    std::vector<double> per_minute;

    double end_minute() const { return start_minute + static_cast<double>(per_minute.size()); }

    double total() const {
        double s = 0;
        for (double v : per_minute) s += v;
        return s;
    }
};

struct BusFleet {
    std::vector<double> capacities; // persons per bus, in dispatch order

    std::size_t size() const { return capacities.size(); }
};

struct BusSchedule {
    double window_start = 0; // t_s
    double window_end = 0;   // t_e; the last dispatch is pinned here
    std::vector<double> dispatch_minutes;
    bool penalized = false; // set when an implied headway violated its bounds
};

// Centered moving average with a shrinking window at the boundaries.
inline DemandProfile smooth_arrivals(const DemandProfile& counts, int window_minutes = 15) {
    if (window_minutes < 1) throw std::invalid_argument("window must be at least one minute");
    DemandProfile out;
    out.start_minute = counts.start_minute;
    const long n = static_cast<long>(counts.per_minute.size());
    out.per_minute.resize(counts.per_minute.size());
    const long half = window_minutes / 2;
    for (long i = 0; i < n; ++i) {
        const long lo = std::max(0L, i - half), hi = std::min(n - 1, i + half);
        double sum = 0;
        for (long j = lo; j <= hi; ++j) sum += counts.per_minute[j];
        out.per_minute[i] = sum / static_cast<double>(hi - lo + 1);
    }
    return out;
}

namespace detail {

// Sum of demand whose minute midpoints fall in [from, to).
inline double demand_between(const DemandProfile& demand, double from, double to) {
    double sum = 0;
    for (std::size_t i = 0; i < demand.per_minute.size(); ++i) {
        const double mid = demand.start_minute + static_cast<double>(i) + 0.5;
        if (mid >= from && mid < to) sum += demand.per_minute[i];
    }
    return sum;
}

inline void check_inputs(const BusSchedule& schedule, const DemandProfile& demand) {
    if (schedule.dispatch_minutes.empty()) throw std::invalid_argument("empty schedule");
    if (!std::is_sorted(schedule.dispatch_minutes.begin(), schedule.dispatch_minutes.end()))
        throw std::invalid_argument("dispatch times must be non-decreasing");
    if (demand.start_minute > schedule.window_start ||
        demand.end_minute() < schedule.window_end - 1e-9)
        throw std::invalid_argument("demand does not cover the scheduling window");
}

} // namespace detail

// Wait until the first arriving bus, summed over all passengers: a passenger
// arriving at minute-midpoint t waits d_i - t for the earliest bus with
// d_i >= t. Per-minute midpoint evaluation of the integral.
inline double w_first(const BusSchedule& schedule, const DemandProfile& demand) {
    detail::check_inputs(schedule, demand);
    double total = 0;
    for (std::size_t i = 0; i < demand.per_minute.size(); ++i) {
        const double mid = demand.start_minute + static_cast<double>(i) + 0.5;
        if (mid < schedule.window_start) continue;
        auto it = std::lower_bound(schedule.dispatch_minutes.begin(),
                                   schedule.dispatch_minutes.end(), mid);
        if (it == schedule.dispatch_minutes.end()) continue; // after the last bus
        total += demand.per_minute[i] * (*it - mid);
    }
    return total;
}

// Leftover passengers N_i waiting for bus i because earlier buses were full:
// N_1 = 0 and N_i = max(0, N_{i-1} + arrivals during the previous headway
// - C_{i-1}), clamped so an underfull bus cannot produce negative queues.
inline std::vector<double> leftover_counts(const BusSchedule& schedule, const DemandProfile& demand,
                                           const BusFleet& fleet) {
    detail::check_inputs(schedule, demand);
    if (fleet.size() != schedule.dispatch_minutes.size())
        throw std::invalid_argument("fleet size differs from the number of dispatches");
    const std::size_t buses = fleet.size();
    std::vector<double> n(buses, 0.0);
    for (std::size_t i = 1; i < buses; ++i) {
        const double prev_start = i >= 2 ? schedule.dispatch_minutes[i - 2] : schedule.window_start;
        const double boarded_window =
            detail::demand_between(demand, prev_start, schedule.dispatch_minutes[i - 1]);
        n[i] = std::max(0.0, n[i - 1] + boarded_window - fleet.capacities[i - 1]);
    }
    return n;
}

// Extra wait of leftover passengers: each one waits the full headway before
// its next chance to board.
inline double w_left(const BusSchedule& schedule, const DemandProfile& demand,
                     const BusFleet& fleet) {
    const std::vector<double> n = leftover_counts(schedule, demand, fleet);
    double total = 0;
    for (std::size_t i = 0; i < n.size(); ++i) {
        const double prev = i >= 1 ? schedule.dispatch_minutes[i - 1] : schedule.window_start;
        total += n[i] * (schedule.dispatch_minutes[i] - prev);
    }
    return total;
}

inline double total_wait(const BusSchedule& schedule, const DemandProfile& demand,
                         const BusFleet& fleet) {
    return w_first(schedule, demand) + w_left(schedule, demand, fleet);
}

inline double avg_wait_per_passenger(const BusSchedule& schedule, const DemandProfile& demand,
                                     const BusFleet& fleet) {
    const double passengers = demand.total();
    if (passengers <= 0) return 0;
    return total_wait(schedule, demand, fleet) / passengers;
}

} // namespace campus::bus
