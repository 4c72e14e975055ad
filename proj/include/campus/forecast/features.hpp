#pragma once

#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "campus/rates.hpp"

namespace campus::forecast {

struct FeatureSpec {
    int fourier_pairs = 2;                  // K sine/cosine pairs per period
    std::vector<double> periods = {24, 120}; // hours: time-of-day and working-week
    int lag_days = 10;                      // same-slot seasonal lags
    std::vector<std::string> extra_flags;   // names of caller-supplied per-hour columns
};

struct SupervisedSet {
    Eigen::MatrixXd X; // leading column is the intercept
    Eigen::VectorXd y;
    std::vector<std::string> feature_names;
    int horizon_days = 0;
};

// [sin(2*pi*k*t/p), cos(2*pi*k*t/p)] for k = 1..K.
inline std::vector<double> fourier_features(double t_hours, double period_hours, int pairs) {
    if (period_hours <= 0) throw std::invalid_argument("fourier_features: period must be positive");
    if (pairs < 1) throw std::invalid_argument("fourier_features: need at least one pair");
    std::vector<double> out;
    out.reserve(2 * pairs);
    for (int k = 1; k <= pairs; ++k) {
        const double angle = 2.0 * std::numbers::pi * k * t_hours / period_hours;
        out.push_back(std::sin(angle));
        out.push_back(std::cos(angle));
    }
    return out;
}

// Builds the direct-strategy training set for one forecast horizon (in days).
// The target at hour index t is paired with the same hour-slot's values on the
// lag_days days ending at the forecast origin t - 24*horizon, plus seasonal
// Fourier terms and any extra flag columns (indexed by hour like the series).
inline SupervisedSet build_direct_set(const RateProfile& history, const FeatureSpec& spec,
                                      int horizon_days,
                                      const std::map<std::string, std::vector<double>>& extras = {}) {
    if (horizon_days < 1) throw std::invalid_argument("horizon must be at least one day");
    if (spec.lag_days < 0) throw std::invalid_argument("lag_days must be non-negative");
    const long total = static_cast<long>(history.values.size());
    const long oldest_lag = 24L * (horizon_days + std::max(spec.lag_days - 1, 0));
    const long first_t = spec.lag_days > 0 ? oldest_lag : 0;
    if (total - first_t < 1)
        throw std::invalid_argument("insufficient history: need at least " +
                                    std::to_string(first_t + 1) + " hourly values, got " +
                                    std::to_string(total));
    for (const auto& name : spec.extra_flags) {
        auto it = extras.find(name);
        if (it == extras.end() || static_cast<long>(it->second.size()) < total)
            throw std::invalid_argument("extra flag column '" + name +
                                        "' missing or shorter than the series");
    }

    SupervisedSet set;
    set.horizon_days = horizon_days;
    set.feature_names.push_back("intercept");
    for (double p : spec.periods)
        for (int k = 1; k <= spec.fourier_pairs; ++k) {
            set.feature_names.push_back("sin" + std::to_string(k) + "_p" + std::to_string(static_cast<int>(p)));
            set.feature_names.push_back("cos" + std::to_string(k) + "_p" + std::to_string(static_cast<int>(p)));
        }
    for (const auto& name : spec.extra_flags) set.feature_names.push_back(name);
    for (int l = 0; l < spec.lag_days; ++l) set.feature_names.push_back("lag_d" + std::to_string(horizon_days + l));

    const long rows = total - first_t;
    const long cols = static_cast<long>(set.feature_names.size());
    set.X.resize(rows, cols);
    set.y.resize(rows);
    for (long r = 0; r < rows; ++r) {
        const long t = first_t + r;
        long c = 0;
        set.X(r, c++) = 1.0;
        for (double p : spec.periods)
            for (double v : fourier_features(static_cast<double>(t), p, spec.fourier_pairs))
                set.X(r, c++) = v;
        for (const auto& name : spec.extra_flags) set.X(r, c++) = extras.at(name)[t];
        for (int l = 0; l < spec.lag_days; ++l)
            set.X(r, c++) = history.values[t - 24L * (horizon_days + l)];
        set.y(r) = history.values[t];
    }
    return set;
}

// Feature row for predicting hour index t of the series' clock (t may point
// past the observed history as long as the lags stay inside it).
inline Eigen::RowVectorXd direct_feature_row(const RateProfile& history, const FeatureSpec& spec,
                                             int horizon_days, long t,
                                             const std::map<std::string, std::vector<double>>& extras = {}) {
    const long oldest = t - 24L * (horizon_days + std::max(spec.lag_days - 1, 0));
    if (spec.lag_days > 0 && oldest < 0)
        throw std::invalid_argument("lags reach before the start of history");
    if (spec.lag_days > 0 && t - 24L * horizon_days >= static_cast<long>(history.values.size()))
        throw std::invalid_argument("lags reach past the end of history");
    std::size_t width = 1 + 2 * spec.fourier_pairs * spec.periods.size() + spec.extra_flags.size() +
                        static_cast<std::size_t>(spec.lag_days);
    Eigen::RowVectorXd row(static_cast<long>(width));
    long c = 0;
    row(c++) = 1.0;
    for (double p : spec.periods)
        for (double v : fourier_features(static_cast<double>(t), p, spec.fourier_pairs)) row(c++) = v;
    for (const auto& name : spec.extra_flags) row(c++) = extras.at(name).at(static_cast<std::size_t>(t));
    for (int l = 0; l < spec.lag_days; ++l) row(c++) = history.values[t - 24L * (horizon_days + l)];
    return row;
}

// One-hot encoding with the first level dropped; levels are ordered by first
// appearance. Returns the encoded columns and their names.
inline std::pair<std::vector<std::vector<double>>, std::vector<std::string>>
one_hot(const std::vector<std::string>& values, const std::string& prefix) {
    std::vector<std::string> levels;
    for (const auto& v : values)
        if (std::find(levels.begin(), levels.end(), v) == levels.end()) levels.push_back(v);
    std::vector<std::vector<double>> cols;
    std::vector<std::string> names;
    for (std::size_t l = 1; l < levels.size(); ++l) {
        std::vector<double> col(values.size(), 0.0);
        for (std::size_t i = 0; i < values.size(); ++i)
            if (values[i] == levels[l]) col[i] = 1.0;
        cols.push_back(std::move(col));
        names.push_back(prefix + "=" + levels[l]);
    }
    return {cols, names};
}

} // namespace campus::forecast
