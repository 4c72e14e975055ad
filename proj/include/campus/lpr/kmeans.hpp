#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

#include "campus/common/civil_time.hpp"
#include "campus/lpr/record.hpp"

namespace campus::lpr {

struct UserCluster {
    std::array<double, 3> center{}; // arrival hour-of-day, departure hour-of-day, stay hours
    std::vector<std::size_t> members;
    double inertia = 0; // sum of squared distances in standardized feature space
};

struct KmeansTrace {
    std::vector<double> inertia_per_iteration;
};

namespace detail {

using Point3 = std::array<double, 3>;

inline double sq_dist(const Point3& a, const Point3& b) {
    double s = 0;
    for (int d = 0; d < 3; ++d) {
        const double diff = a[d] - b[d];
        s += diff * diff;
    }
    return s;
}

} // namespace detail

// Lloyd's algorithm with k-means++ seeding over the three stay features
// (arrival hour, departure hour, stay duration), each standardized to zero
// mean / unit variance before clustering. Deterministic under `seed`; empty
// clusters are re-seeded from the point farthest from its assigned center.
// Returned centers are in original units; inertia is standardized.
inline std::vector<UserCluster> kmeans_users(const std::vector<StayRecord>& stays, int k,
                                             std::uint64_t seed, KmeansTrace* trace = nullptr,
                                             int max_iterations = 300) {
    using detail::Point3;
    const std::size_t n = stays.size();
    if (k <= 0) throw std::invalid_argument("k must be positive");
    if (static_cast<std::size_t>(k) > n)
        throw std::invalid_argument("k exceeds the number of stay records");

    std::vector<Point3> raw(n);
    for (std::size_t i = 0; i < n; ++i)
        raw[i] = {civil::hour_of_day(stays[i].entry_time), civil::hour_of_day(stays[i].exit_time),
                  stays[i].stay_hours()};

    // Standardize; a constant feature keeps scale 1 so it contributes zero.
    Point3 mean{}, scale{};
    for (const auto& p : raw)
        for (int d = 0; d < 3; ++d) mean[d] += p[d];
    for (int d = 0; d < 3; ++d) mean[d] /= static_cast<double>(n);
    for (const auto& p : raw)
        for (int d = 0; d < 3; ++d) scale[d] += (p[d] - mean[d]) * (p[d] - mean[d]);
    for (int d = 0; d < 3; ++d) {
        scale[d] = std::sqrt(scale[d] / static_cast<double>(n));
        if (scale[d] == 0) scale[d] = 1;
    }
    std::vector<Point3> pts(n);
    for (std::size_t i = 0; i < n; ++i)
        for (int d = 0; d < 3; ++d) pts[i][d] = (raw[i][d] - mean[d]) / scale[d];

    std::mt19937_64 rng(seed);

    // k-means++ seeding.
    std::vector<Point3> centers;
    centers.reserve(k);
    std::uniform_int_distribution<std::size_t> first(0, n - 1);
    centers.push_back(pts[first(rng)]);
    std::vector<double> d2(n);
    while (centers.size() < static_cast<std::size_t>(k)) {
        double total = 0;
        for (std::size_t i = 0; i < n; ++i) {
            double best = std::numeric_limits<double>::max();
            for (const auto& c : centers) best = std::min(best, detail::sq_dist(pts[i], c));
            d2[i] = best;
            total += best;
        }
        if (total == 0) {
            centers.push_back(pts[first(rng)]);
            continue;
        }
        std::uniform_real_distribution<double> u(0.0, total);
        double target = u(rng), acc = 0;
        std::size_t pick = n - 1;
        for (std::size_t i = 0; i < n; ++i) {
            acc += d2[i];
            if (acc >= target) {
                pick = i;
                break;
            }
        }
        centers.push_back(pts[pick]);
    }

    std::vector<int> assign(n, -1);
    for (int iter = 0; iter < max_iterations; ++iter) {
        bool changed = false;
        double inertia = 0;
        for (std::size_t i = 0; i < n; ++i) {
            int best = 0;
            double best_d = detail::sq_dist(pts[i], centers[0]);
            for (int c = 1; c < k; ++c) {
                const double d = detail::sq_dist(pts[i], centers[c]);
                if (d < best_d) best_d = d, best = c;
            }
            if (assign[i] != best) assign[i] = best, changed = true;
            inertia += best_d;
        }
        if (trace) trace->inertia_per_iteration.push_back(inertia);
        if (!changed && iter > 0) break;

        std::vector<Point3> sums(k, Point3{});
        std::vector<std::size_t> counts(k, 0);
        for (std::size_t i = 0; i < n; ++i) {
            for (int d = 0; d < 3; ++d) sums[assign[i]][d] += pts[i][d];
            ++counts[assign[i]];
        }
        for (int c = 0; c < k; ++c) {
            if (counts[c] == 0) {
                // Re-seed from the point farthest from its current center.
                std::size_t far = 0;
                double far_d = -1;
                for (std::size_t i = 0; i < n; ++i) {
                    const double d = detail::sq_dist(pts[i], centers[assign[i]]);
                    if (d > far_d) far_d = d, far = i;
                }
                centers[c] = pts[far];
                changed = true;
            } else {
                for (int d = 0; d < 3; ++d) centers[c][d] = sums[c][d] / static_cast<double>(counts[c]);
            }
        }
        if (!changed) break;
    }

    std::vector<UserCluster> out(k);
    for (int c = 0; c < k; ++c)
        for (int d = 0; d < 3; ++d) out[c].center[d] = centers[c][d] * scale[d] + mean[d];
    for (std::size_t i = 0; i < n; ++i) {
        out[assign[i]].members.push_back(i);
        out[assign[i]].inertia += detail::sq_dist(pts[i], centers[assign[i]]);
    }
    return out;
}

} // namespace campus::lpr
