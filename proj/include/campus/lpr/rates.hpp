#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "campus/common/civil_time.hpp"
#include "campus/rates.hpp"

namespace campus::lpr {

// Counts records per hour-slot of the horizon. Every timestamp must fall in
// [horizon_start, horizon_start + horizon_hours * 3600).
inline RateProfile hourly_rates(const std::vector<std::int64_t>& timestamps,
                                std::int64_t horizon_start, std::size_t horizon_hours) {
    RateProfile profile;
    profile.slot_hours = 1.0;
    profile.horizon_start = horizon_start;
    profile.values.assign(horizon_hours, 0.0);
    for (std::int64_t ts : timestamps) {
        const std::int64_t offset = ts - horizon_start;
        if (offset < 0 || offset >= static_cast<std::int64_t>(horizon_hours) * civil::kSecondsPerHour)
            throw std::out_of_range("timestamp " + civil::format_timestamp(ts) +
                                    " outside the horizon");
        profile.values[static_cast<std::size_t>(offset / civil::kSecondsPerHour)] += 1.0;
    }
    return profile;
}

} // namespace campus::lpr
