#pragma once

#include <algorithm>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "campus/common/errors.hpp"

namespace campus::carpark {

// Expected rejections per (day, scheme) plus the spaces each scheme leases to
// car sharing. Days and schemes are 0-indexed here; file formats are 1-based.
struct SchemeCostTable {
    std::vector<std::vector<double>> r_sv; // [day][scheme]
    std::vector<std::vector<double>> r_pv; // [day][scheme]
    std::vector<int> spaces_sv;            // s[scheme]
    std::vector<double> rho;               // optional scheme labels for reports

    std::size_t days() const { return r_sv.size(); }
    std::size_t schemes() const { return spaces_sv.size(); }

    void validate() const {
        if (r_pv.size() != r_sv.size()) throw std::invalid_argument("table day counts differ");
        for (std::size_t i = 0; i < r_sv.size(); ++i) {
            if (r_sv[i].size() != schemes() || r_pv[i].size() != schemes())
                throw std::invalid_argument("table row width differs from scheme count");
            for (std::size_t j = 0; j < schemes(); ++j)
                if (r_sv[i][j] < 0 || r_pv[i][j] < 0)
                    throw std::invalid_argument("negative rejection count in table");
        }
        for (int s : spaces_sv)
            if (s < 0) throw std::invalid_argument("negative space count");
    }
};

struct PartitionOptConfig {
    double w_sv = 15.8;            // cost per rejected shared-vehicle user
    double w_pv = 26.0;            // cost per rejected private-vehicle user
    double price_m = 15.8;         // daily lease price per space
    double min_revenue = 36468.75; // revenue must strictly exceed this over the window
};

struct PartitionDecision {
    std::vector<int> scheme_by_day; // 0-based scheme index per day
    double total_cost = 0;
    double revenue = 0;
};

inline double decision_cost(const std::vector<int>& scheme_by_day, const SchemeCostTable& table,
                            const PartitionOptConfig& cfg) {
    if (scheme_by_day.size() != table.days())
        throw std::invalid_argument("decision length differs from day count");
    double cost = 0;
    for (std::size_t i = 0; i < scheme_by_day.size(); ++i) {
        const int j = scheme_by_day[i];
        if (j < 0 || static_cast<std::size_t>(j) >= table.schemes())
            throw std::out_of_range("scheme index out of range");
        cost += cfg.w_sv * table.r_sv[i][j] + cfg.w_pv * table.r_pv[i][j];
    }
    return cost;
}

inline double decision_revenue(const std::vector<int>& scheme_by_day, const SchemeCostTable& table,
                               const PartitionOptConfig& cfg) {
    if (scheme_by_day.size() != table.days())
        throw std::invalid_argument("decision length differs from day count");
    double revenue = 0;
    for (int j : scheme_by_day) {
        if (j < 0 || static_cast<std::size_t>(j) >= table.schemes())
            throw std::out_of_range("scheme index out of range");
        revenue += cfg.price_m * table.spaces_sv[j];
    }
    return revenue;
}

// Picks one scheme per day minimizing rejection cost subject to the strict
// revenue constraint. Exact depth-first branch and bound: per-day minimum
// costs bound the objective and the maximum attainable residual revenue
// prunes dead branches. Schemes are explored in index order and only strict
// improvements replace the incumbent, so the result is the lexicographically
// smallest optimal decision.
inline PartitionDecision optimize_partition(const SchemeCostTable& table,
                                            const PartitionOptConfig& cfg) {
    table.validate();
    const std::size_t days = table.days(), schemes = table.schemes();
    if (days == 0 || schemes == 0) throw std::invalid_argument("empty cost table");

    double max_day_revenue = 0;
    for (std::size_t j = 0; j < schemes; ++j)
        max_day_revenue = std::max(max_day_revenue, cfg.price_m * table.spaces_sv[j]);
    if (max_day_revenue * static_cast<double>(days) <= cfg.min_revenue)
        throw infeasible_error(
            "no decision can exceed the minimum revenue; best attainable falls short by " +
            std::to_string(cfg.min_revenue - max_day_revenue * static_cast<double>(days)));

    std::vector<double> day_cost(days * schemes);
    std::vector<double> min_cost_suffix(days + 1, 0), max_rev_suffix(days + 1, 0);
    for (std::size_t i = days; i-- > 0;) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < schemes; ++j) {
            day_cost[i * schemes + j] = cfg.w_sv * table.r_sv[i][j] + cfg.w_pv * table.r_pv[i][j];
            best = std::min(best, day_cost[i * schemes + j]);
        }
        min_cost_suffix[i] = min_cost_suffix[i + 1] + best;
        max_rev_suffix[i] = max_rev_suffix[i + 1] + max_day_revenue;
    }

    PartitionDecision best;
    best.total_cost = std::numeric_limits<double>::infinity();
    std::vector<int> current(days, -1);

    auto dfs = [&](auto&& self, std::size_t day, double cost, double revenue) -> void {
        if (cost + min_cost_suffix[day] >= best.total_cost) return;
        if (revenue + max_rev_suffix[day] <= cfg.min_revenue) return;
        if (day == days) {
            best.scheme_by_day = current;
            best.total_cost = cost;
            best.revenue = revenue;
            return;
        }
        for (std::size_t j = 0; j < schemes; ++j) {
            current[day] = static_cast<int>(j);
            self(self, day + 1, cost + day_cost[day * schemes + j],
                 revenue + cfg.price_m * table.spaces_sv[j]);
        }
        current[day] = -1;
    };
    dfs(dfs, 0, 0.0, 0.0);

    if (best.scheme_by_day.empty())
        throw infeasible_error("no decision satisfies the revenue constraint");
    return best;
}

struct StaticDynamicReport {
    PartitionDecision dynamic_best;
    std::optional<int> static_scheme;     // best single scheme used every day, if feasible
    std::optional<double> static_cost;
    double cost_ratio = std::numeric_limits<double>::quiet_NaN(); // dynamic / static
};

// Compares the per-day optimal decision against the best feasible static
// decision (one scheme held all week).
inline StaticDynamicReport compare_static_dynamic(const SchemeCostTable& table,
                                                  const PartitionOptConfig& cfg) {
    StaticDynamicReport report;
    report.dynamic_best = optimize_partition(table, cfg);
    for (std::size_t j = 0; j < table.schemes(); ++j) {
        const std::vector<int> decision(table.days(), static_cast<int>(j));
        if (decision_revenue(decision, table, cfg) <= cfg.min_revenue) continue;
        const double cost = decision_cost(decision, table, cfg);
        if (!report.static_cost || cost < *report.static_cost) {
            report.static_cost = cost;
            report.static_scheme = static_cast<int>(j);
        }
    }
    if (report.static_cost && *report.static_cost > 0)
        report.cost_ratio = report.dynamic_best.total_cost / *report.static_cost;
    return report;
}

} // namespace campus::carpark
