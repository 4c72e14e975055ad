#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "campus/bus/wait.hpp"
#include "campus/common/errors.hpp"

namespace campus::bus {

struct GaConfig {
    int population = 50;
    int max_generations = 1000;
    int stall_halt = 100;        // stop when the best is unchanged this long
    double crossover_prob = 0.8;
    double mutation_prob = 0.2;  // per-gene uniform resampling probability
    double h_min = 1.0;          // minutes
    double h_max = 60.0;
    std::uint64_t seed = 1;

    void validate() const {
        if (population < 2) throw std::invalid_argument("population must be at least 2");
        if (crossover_prob < 0 || crossover_prob > 1 || mutation_prob < 0 || mutation_prob > 1)
            throw std::invalid_argument("probabilities must lie in [0,1]");
        if (h_min <= 0 || h_min > h_max) throw std::invalid_argument("need 0 < H_min <= H_max");
    }
};

struct GaResult {
    BusSchedule schedule;
    double fitness = 0;                     // total wait of the returned schedule (with penalty)
    std::vector<double> best_fitness_trace; // best-so-far after each generation
};

namespace detail {

// Chromosome = headways H_1..H_{B-1}; dispatch times grow forward from t_s and
// the last bus is pinned to t_e. An implied final headway outside
// [h_min, h_max] incurs penalty = 10 * violation minutes * total demand.
struct Decoded {
    BusSchedule schedule;
    double penalty = 0;
};

inline Decoded decode(const std::vector<double>& genes, double t_s, double t_e,
                      const GaConfig& cfg, double total_demand) {
    Decoded d;
    d.schedule.window_start = t_s;
    d.schedule.window_end = t_e;
    double t = t_s, gene_sum = 0;
    for (double h : genes) {
        gene_sum += h;
        t = std::min(t + h, t_e); // evaluation clamps overshoot; the penalty below charges it
        d.schedule.dispatch_minutes.push_back(t);
    }
    const double implied = t_e - t_s - gene_sum;
    double violation = 0;
    if (implied < cfg.h_min) violation = cfg.h_min - implied;
    else if (implied > cfg.h_max) violation = implied - cfg.h_max;
    d.schedule.dispatch_minutes.push_back(t_e);
    if (violation > 0) {
        d.penalty = 10.0 * violation * total_demand;
        d.schedule.penalized = true;
    }
    return d;
}

inline double fitness_of(const std::vector<double>& genes, const DemandProfile& demand,
                         const BusFleet& fleet, double t_s, double t_e, const GaConfig& cfg,
                         double total_demand) {
    const Decoded d = decode(genes, t_s, t_e, cfg, total_demand);
    return total_wait(d.schedule, demand, fleet) + d.penalty;
}

} // namespace detail

// Genetic search over headway chromosomes: tournament selection, local
// arithmetic crossover (per-gene convex blend, so genes stay inside their
// bounds), per-gene uniform mutation, single-individual elitism. Deterministic
// under cfg.seed. A single-bus fleet needs no search: the bus departs at t_e.
inline GaResult ga_optimize(const DemandProfile& demand, const BusFleet& fleet,
                            double window_start, double window_end, const GaConfig& cfg = {}) {
    cfg.validate();
    if (fleet.size() < 1) throw std::invalid_argument("fleet must have at least one bus");
    for (double c : fleet.capacities)
        if (c <= 0) throw std::invalid_argument("bus capacities must be positive");
    const double span = window_end - window_start;
    const double buses = static_cast<double>(fleet.size());
    if (buses * cfg.h_min > span || buses * cfg.h_max < span)
        throw infeasible_error("no schedule fits the window: " + std::to_string(fleet.size()) +
                               " buses with headways in [" + std::to_string(cfg.h_min) + ", " +
                               std::to_string(cfg.h_max) + "] cannot span " + std::to_string(span) +
                               " minutes");

    GaResult result;
    if (fleet.size() == 1) {
        result.schedule = {window_start, window_end, {window_end}, false};
        result.fitness = total_wait(result.schedule, demand, fleet);
        result.best_fitness_trace = {result.fitness};
        return result;
    }

    const std::size_t genes = fleet.size() - 1;
    const double total_demand = demand.total();
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> gene_range(cfg.h_min, cfg.h_max);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<std::size_t> pick(0, static_cast<std::size_t>(cfg.population) - 1);

    auto evaluate = [&](const std::vector<double>& g) {
        return detail::fitness_of(g, demand, fleet, window_start, window_end, cfg, total_demand);
    };

    std::vector<std::vector<double>> pop(static_cast<std::size_t>(cfg.population),
                                         std::vector<double>(genes));
    for (auto& ind : pop)
        for (auto& g : ind) g = gene_range(rng);
    std::vector<double> fit(pop.size());
    for (std::size_t i = 0; i < pop.size(); ++i) fit[i] = evaluate(pop[i]);

    std::size_t best_idx = static_cast<std::size_t>(
        std::min_element(fit.begin(), fit.end()) - fit.begin());
    std::vector<double> best_genes = pop[best_idx];
    double best_fit = fit[best_idx];

    auto tournament = [&]() -> const std::vector<double>& {
        const std::size_t a = pick(rng), b = pick(rng);
        return fit[a] <= fit[b] ? pop[a] : pop[b];
    };

    int stall = 0;
    for (int gen = 0; gen < cfg.max_generations && stall < cfg.stall_halt; ++gen) {
        std::vector<std::vector<double>> next;
        next.reserve(pop.size());
        next.push_back(best_genes); // elitism
        while (next.size() < pop.size()) {
            std::vector<double> a = tournament(), b = tournament();
            if (unit(rng) < cfg.crossover_prob) {
                for (std::size_t g = 0; g < genes; ++g) {
                    const double alpha = unit(rng);
                    const double x = a[g], y = b[g];
                    a[g] = alpha * x + (1.0 - alpha) * y;
                    b[g] = (1.0 - alpha) * x + alpha * y;
                }
            }
            for (auto* child : {&a, &b}) {
                for (auto& g : *child)
                    if (unit(rng) < cfg.mutation_prob) g = gene_range(rng);
                if (next.size() < pop.size()) next.push_back(*child);
            }
        }
        pop.swap(next);
        for (std::size_t i = 0; i < pop.size(); ++i) fit[i] = evaluate(pop[i]);
        const std::size_t gen_best = static_cast<std::size_t>(
            std::min_element(fit.begin(), fit.end()) - fit.begin());
        if (fit[gen_best] < best_fit) {
            best_fit = fit[gen_best];
            best_genes = pop[gen_best];
            stall = 0;
        } else {
            ++stall;
        }
        result.best_fitness_trace.push_back(best_fit);
    }

    const detail::Decoded d = detail::decode(best_genes, window_start, window_end, cfg, total_demand);
    result.schedule = d.schedule;
    result.fitness = best_fit;
    return result;
}

} // namespace campus::bus
