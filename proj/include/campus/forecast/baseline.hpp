#pragma once

#include <stdexcept>
#include <vector>

#include "campus/rates.hpp"

namespace campus::forecast {

// Baseline predictor: the mean of each hour-slot over all historical days.
// A trailing partial day contributes only to the slots it covers.
inline RateProfile baseline_profile(const RateProfile& history, int slots_per_day = 24) {
    if (history.values.empty()) throw std::invalid_argument("baseline_profile: empty history");
    if (slots_per_day <= 0) throw std::invalid_argument("baseline_profile: bad slots_per_day");
    RateProfile out;
    out.slot_hours = history.slot_hours;
    out.horizon_start = history.horizon_start;
    out.values.assign(static_cast<std::size_t>(slots_per_day), 0.0);
    std::vector<std::size_t> counts(static_cast<std::size_t>(slots_per_day), 0);
    for (std::size_t t = 0; t < history.values.size(); ++t) {
        const std::size_t h = t % static_cast<std::size_t>(slots_per_day);
        out.values[h] += history.values[t];
        ++counts[h];
    }
    for (std::size_t h = 0; h < out.values.size(); ++h)
        if (counts[h]) out.values[h] /= static_cast<double>(counts[h]);
    return out;
}

} // namespace campus::forecast
