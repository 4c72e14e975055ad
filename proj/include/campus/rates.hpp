#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace campus {

// Piecewise-constant rate profile: values[k] is the event count (or rate)
// for hour-slot k of the horizon. Shared by the cleansing, forecasting and
// queueing-model layers.
struct RateProfile {
    double slot_hours = 1.0;
    std::int64_t horizon_start = 0; // seconds, start of slot 0
    std::vector<double> values;

    std::size_t slots() const { return values.size(); }

    double total() const {
        double s = 0;
        for (double v : values) s += v;
        return s;
    }

    void check_non_negative() const {
        for (double v : values)
            if (v < 0) throw std::invalid_argument("rate profile has a negative value");
    }
};

} // namespace campus
