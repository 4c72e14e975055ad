#pragma once

// Naive local-time arithmetic: timestamps are seconds since 1970-01-01 00:00
// in site-local civil time, with no timezone or DST handling.

#include <cstdint>
#include <cstdio>
#include <string>

#include "campus/common/errors.hpp"

namespace campus::civil {

constexpr std::int64_t kSecondsPerDay = 86400;
constexpr std::int64_t kSecondsPerHour = 3600;

// Days since 1970-01-01 for a civil date (proleptic Gregorian).
constexpr std::int64_t days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    const int era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153u * static_cast<unsigned>(m + (m > 2 ? -3 : 9)) + 2) / 5 + static_cast<unsigned>(d) - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return static_cast<std::int64_t>(era) * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

struct CivilDateTime {
    int year, month, day, hour, minute, second;
};

constexpr CivilDateTime civil_from_seconds(std::int64_t ts) {
    std::int64_t z = ts / kSecondsPerDay;
    std::int64_t sod = ts % kSecondsPerDay;
    if (sod < 0) {
        sod += kSecondsPerDay;
        --z;
    }
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    const unsigned d = doy - (153 * mp + 2) / 5 + 1;
    const unsigned m = mp + (mp < 10 ? 3 : -9);
    return {static_cast<int>(y + (m <= 2)), static_cast<int>(m), static_cast<int>(d),
            static_cast<int>(sod / 3600), static_cast<int>(sod % 3600 / 60), static_cast<int>(sod % 60)};
}

// Accepts "YYYY-MM-DD HH:MM:SS" or "YYYY-MM-DDTHH:MM:SS"; seconds optional.
inline std::int64_t parse_timestamp(const std::string& s, std::size_t line = 0) {
    int y = 0, mo = 0, d = 0, h = 0, mi = 0, sec = 0;
    char sep = 0;
    int n = std::sscanf(s.c_str(), "%d-%d-%d%c%d:%d:%d", &y, &mo, &d, &sep, &h, &mi, &sec);
    if (n < 6 || (sep != ' ' && sep != 'T') || mo < 1 || mo > 12 || d < 1 || d > 31 ||
        h < 0 || h > 23 || mi < 0 || mi > 59 || sec < 0 || sec > 60)
        throw parse_error("bad timestamp '" + s + "'", line);
    return days_from_civil(y, mo, d) * kSecondsPerDay + h * 3600 + mi * 60 + sec;
}

inline std::string format_timestamp(std::int64_t ts) {
    CivilDateTime c = civil_from_seconds(ts);
    char buf[32];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02d %02d:%02d:%02d", c.year, c.month, c.day, c.hour,
                  c.minute, c.second);
    return buf;
}

// Floor division helpers; timestamps can legitimately predate the epoch in tests.
constexpr std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    return (a % b != 0 && (a < 0) != (b < 0)) ? q - 1 : q;
}

constexpr std::int64_t midnight_of(std::int64_t ts) {
    return floor_div(ts, kSecondsPerDay) * kSecondsPerDay;
}

constexpr std::int64_t day_index(std::int64_t ts) { return floor_div(ts, kSecondsPerDay); }

constexpr double hour_of_day(std::int64_t ts) {
    return static_cast<double>(ts - midnight_of(ts)) / kSecondsPerHour;
}

} // namespace campus::civil
