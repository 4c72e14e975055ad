#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "campus/common/civil_time.hpp"

namespace campus::bus {

// One people-detector reading; nullopt distance means the echo never returned.
struct PduRecord {
    std::int64_t timestamp = 0;
    int sensor_position = 1; // 1..N, 1 at the queue head
    std::optional<double> distance_cm;
};

struct QueueConfig {
    double bin_minutes = 2.0;
    double detect_threshold = 0.2;       // fraction of in-band readings must exceed this
    double band_low_cm = 200.0;          // queue forms 2-3 m from the fence
    double band_high_cm = 300.0;
    int persons_per_segment = 10;
    int sensor_count = 10;
    bool tie_prefer_fewer_ones = true;   // hamming ties resolve to the shorter queue
};

using DetectionVector = std::vector<std::uint8_t>; // one bit per sensor

struct QueueEstimate {
    std::int64_t bin_start = 0;
    int length_persons = 0;
    DetectionVector code;      // corrected bits
    int sensors_reporting = 0; // coverage: sensors with at least one reading in the bin
};

// Per-bin, per-sensor measurement lists. Bins are left-closed, right-open,
// `bin_minutes` wide and aligned to each record's own midnight.
inline std::map<std::int64_t, std::vector<std::vector<std::optional<double>>>> bin_measurements(
    const std::vector<PduRecord>& records, const QueueConfig& cfg = {}) {
    const auto bin_seconds = static_cast<std::int64_t>(cfg.bin_minutes * 60);
    if (bin_seconds <= 0) throw std::invalid_argument("bin width must be positive");
    std::map<std::int64_t, std::vector<std::vector<std::optional<double>>>> bins;
    for (const auto& r : records) {
        if (r.sensor_position < 1 || r.sensor_position > cfg.sensor_count)
            throw std::invalid_argument("sensor position " + std::to_string(r.sensor_position) +
                                        " outside 1.." + std::to_string(cfg.sensor_count));
        const std::int64_t midnight = civil::midnight_of(r.timestamp);
        const std::int64_t bin = midnight + (r.timestamp - midnight) / bin_seconds * bin_seconds;
        auto& per_sensor = bins[bin];
        if (per_sensor.empty()) per_sensor.resize(static_cast<std::size_t>(cfg.sensor_count));
        per_sensor[static_cast<std::size_t>(r.sensor_position - 1)].push_back(r.distance_cm);
    }
    return bins;
}

// Bit i is set when the fraction of sensor i's readings inside the positive
// band strictly exceeds the threshold. Missed echoes count toward the
// denominator only; a silent sensor reads as 0.
inline DetectionVector detect_vector(const std::vector<std::vector<std::optional<double>>>& bin,
                                     const QueueConfig& cfg = {}) {
    DetectionVector bits(static_cast<std::size_t>(cfg.sensor_count), 0);
    for (std::size_t s = 0; s < bits.size() && s < bin.size(); ++s) {
        const auto& readings = bin[s];
        if (readings.empty()) continue;
        std::size_t positive = 0;
        for (const auto& d : readings)
            if (d && *d >= cfg.band_low_cm && *d <= cfg.band_high_cm) ++positive;
        if (static_cast<double>(positive) / static_cast<double>(readings.size()) >
            cfg.detect_threshold)
            bits[s] = 1;
    }
    return bits;
}

inline bool is_valid_code(const DetectionVector& code) {
    bool seen_zero = false;
    for (auto b : code) {
        if (b > 1) return false;
        if (b == 0) seen_zero = true;
        else if (seen_zero) return false;
    }
    return true;
}

// Snaps a detection vector to the nearest valid code (a ones-prefix followed
// by zeros, the all-zero code included) by hamming distance. Ties go to the
// code with fewer ones unless configured otherwise. Idempotent on valid codes.
inline DetectionVector correct_code(const DetectionVector& v, const QueueConfig& cfg = {}) {
    const std::size_t n = v.size();
    std::size_t best_prefix = 0, best_dist = n + 1;
    for (std::size_t prefix = 0; prefix <= n; ++prefix) {
        std::size_t dist = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const std::uint8_t want = i < prefix ? 1 : 0;
            if ((v[i] != 0) != (want != 0)) ++dist;
        }
        const bool better =
            dist < best_dist ||
            (dist == best_dist && !cfg.tie_prefer_fewer_ones && prefix > best_prefix);
        if (better) {
            best_dist = dist;
            best_prefix = prefix;
        }
    }
    DetectionVector out(n, 0);
    for (std::size_t i = 0; i < best_prefix; ++i) out[i] = 1;
    return out;
}

// Queue length of a valid code: detected segments times persons per segment.
inline int queue_length(const DetectionVector& code, const QueueConfig& cfg = {}) {
    if (!is_valid_code(code))
        throw std::invalid_argument("queue_length requires a valid (corrected) code");
    int ones = 0;
    for (auto b : code) ones += b;
    return ones * cfg.persons_per_segment;
}

// Full pipeline: bin, threshold, correct, convert to persons. The returned
// series covers every bin between the first and last record; bins without
// data report an empty queue.
inline std::vector<QueueEstimate> infer_queue(const std::vector<PduRecord>& records,
                                              const QueueConfig& cfg = {}) {
    std::vector<QueueEstimate> series;
    auto bins = bin_measurements(records, cfg);
    if (bins.empty()) return series;
    const auto bin_seconds = static_cast<std::int64_t>(cfg.bin_minutes * 60);
    for (std::int64_t t = bins.begin()->first; t <= bins.rbegin()->first; t += bin_seconds) {
        QueueEstimate est;
        est.bin_start = t;
        auto it = bins.find(t);
        if (it == bins.end()) {
            est.code.assign(static_cast<std::size_t>(cfg.sensor_count), 0);
        } else {
            est.code = correct_code(detect_vector(it->second, cfg), cfg);
            for (const auto& readings : it->second)
                if (!readings.empty()) ++est.sensors_reporting;
        }
        est.length_persons = queue_length(est.code, cfg);
        series.push_back(std::move(est));
    }
    return series;
}

inline std::string code_to_string(const DetectionVector& code) {
    std::string s;
    s.reserve(code.size());
    for (auto b : code) s.push_back(b ? '1' : '0');
    return s;
}

} // namespace campus::bus
