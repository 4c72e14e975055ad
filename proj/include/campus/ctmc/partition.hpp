#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "campus/ctmc/birth_death.hpp"
#include "campus/rates.hpp"

namespace campus::ctmc {

// Split of the car park between private vehicles (PV) and shared vehicles (SV).
// rho is the fraction of spaces kept for PV users.
struct PartitionScheme {
    double rho = 1.0;
    int pv_capacity = 0;
    int sv_capacity = 0;
};

inline PartitionScheme make_scheme(double rho, int total_capacity) {
    if (rho < 0 || rho > 1) throw std::invalid_argument("rho outside [0,1]");
    if (total_capacity < 0) throw std::invalid_argument("negative capacity");
    PartitionScheme s;
    s.rho = rho;
    s.pv_capacity = static_cast<int>(std::llround(rho * total_capacity));
    s.sv_capacity = total_capacity - s.pv_capacity;
    return s;
}

struct ClassDemand {
    RateProfile arrivals;
    RateProfile departures;
};

struct DemandSplit {
    ClassDemand sv;
    ClassDemand pv;
};

// Derives shared-vehicle demand from the observed profile: a `diversion`
// share of existing users switches to shared vehicles, and `subscribers` new
// users add binomial per-hour entry/exit traffic, taken here in expectation
// (subscribers * p per hour). The residual (1 - diversion) share stays PV.
inline DemandSplit sv_demand_profile(const ClassDemand& observed, int subscribers = 200,
                                     double p_in = 0.5, double p_out = 0.4,
                                     double diversion = 0.2) {
    if (diversion < 0 || diversion > 1) throw std::invalid_argument("diversion outside [0,1]");
    if (subscribers < 0) throw std::invalid_argument("negative subscriber count");
    if (p_in < 0 || p_in > 1 || p_out < 0 || p_out > 1)
        throw std::invalid_argument("binomial probability outside [0,1]");
    observed.arrivals.check_non_negative();
    observed.departures.check_non_negative();

    DemandSplit split;
    split.sv = observed;
    split.pv = observed;
    for (std::size_t k = 0; k < observed.arrivals.slots(); ++k) {
        split.sv.arrivals.values[k] = diversion * observed.arrivals.values[k] + subscribers * p_in;
        split.pv.arrivals.values[k] = (1.0 - diversion) * observed.arrivals.values[k];
    }
    for (std::size_t k = 0; k < observed.departures.slots(); ++k) {
        split.sv.departures.values[k] = diversion * observed.departures.values[k] + subscribers * p_out;
        split.pv.departures.values[k] = (1.0 - diversion) * observed.departures.values[k];
    }
    return split;
}

// Sampling variant for Monte-Carlo cross-checks: the subscriber add-on is a
// fresh binomial draw per hour-slot instead of its expectation.
inline DemandSplit sv_demand_profile_sampled(const ClassDemand& observed, std::uint64_t seed,
                                             int subscribers = 200, double p_in = 0.5,
                                             double p_out = 0.4, double diversion = 0.2) {
    DemandSplit split = sv_demand_profile(observed, subscribers, p_in, p_out, diversion);
    std::mt19937_64 rng(seed);
    std::binomial_distribution<int> in(subscribers, p_in), out(subscribers, p_out);
    for (std::size_t k = 0; k < split.sv.arrivals.slots(); ++k)
        split.sv.arrivals.values[k] += in(rng) - subscribers * p_in;
    for (std::size_t k = 0; k < split.sv.departures.slots(); ++k)
        split.sv.departures.values[k] += out(rng) - subscribers * p_out;
    return split;
}

struct SchemeRejections {
    std::vector<double> pv_daily;
    std::vector<double> sv_daily;
};

namespace detail {

inline std::vector<double> daily_rejections(int capacity, const ClassDemand& demand,
                                            double epoch_hours, int slots_per_day) {
    if (demand.arrivals.slots() != demand.departures.slots())
        throw std::invalid_argument("arrival/departure horizons differ");
    if (demand.arrivals.slots() % slots_per_day != 0)
        throw std::invalid_argument("demand horizon is not a whole number of days");
    const std::size_t days = demand.arrivals.slots() / slots_per_day;
    std::vector<double> totals;
    totals.reserve(days);
    for (std::size_t d = 0; d < days; ++d) {
        BirthDeathSpec spec;
        spec.capacity = capacity;
        spec.epoch_hours = epoch_hours;
        const auto begin = d * slots_per_day;
        spec.arrivals.values.assign(demand.arrivals.values.begin() + begin,
                                    demand.arrivals.values.begin() + begin + slots_per_day);
        spec.departures.values.assign(demand.departures.values.begin() + begin,
                                      demand.departures.values.begin() + begin + slots_per_day);
        // Each day restarts from an empty car park at midnight.
        totals.push_back(simulate_day(spec, point_mass(capacity + 1)).total_rejections);
    }
    return totals;
}

} // namespace detail

// Expected daily rejections for both user classes under a partitioning
// scheme: two isolated chains, one per partition, each restarted per day.
inline SchemeRejections scheme_rejections(int total_capacity, const PartitionScheme& scheme,
                                          const ClassDemand& pv_demand, const ClassDemand& sv_demand,
                                          double epoch_hours = 1.0 / 12, int slots_per_day = 24) {
    if (scheme.pv_capacity + scheme.sv_capacity != total_capacity)
        throw std::invalid_argument("partition capacities do not add up to the total");
    if (pv_demand.arrivals.slots() != sv_demand.arrivals.slots())
        throw std::invalid_argument("PV and SV demands cover different horizons");
    SchemeRejections out;
    out.pv_daily = detail::daily_rejections(scheme.pv_capacity, pv_demand, epoch_hours, slots_per_day);
    out.sv_daily = detail::daily_rejections(scheme.sv_capacity, sv_demand, epoch_hours, slots_per_day);
    return out;
}

} // namespace campus::ctmc
