#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include "campus/common/civil_time.hpp"
#include "campus/lpr/levenshtein.hpp"
#include "campus/lpr/record.hpp"

namespace campus::lpr {

namespace detail {

// One forward pass of duplicate suppression over the surviving records.
// For each anchor, records among the next `lookahead` survivors whose plate is
// within `distance` edits form a group; only the highest-OCR member survives
// (earliest on ties). Returns true if anything was removed.
inline bool dedup_pass(std::vector<PlateRecord>& records, const CleanseConfig& cfg) {
    const std::size_t n = records.size();
    std::vector<bool> removed(n, false);
    bool changed = false;
    for (std::size_t i = 0; i < n; ++i) {
        if (removed[i]) continue;
        std::vector<std::size_t> group{i};
        std::size_t seen = 0;
        for (std::size_t j = i + 1; j < n && seen < static_cast<std::size_t>(cfg.dedup_lookahead); ++j) {
            if (removed[j]) continue;
            ++seen;
            if (levenshtein(records[i].plate, records[j].plate) <=
                static_cast<std::size_t>(cfg.dedup_distance))
                group.push_back(j);
        }
        if (group.size() == 1) continue;
        std::size_t winner = group[0];
        for (std::size_t g : group)
            if (records[g].ocr_score > records[winner].ocr_score) winner = g;
        for (std::size_t g : group)
            if (g != winner) {
                removed[g] = true;
                changed = true;
            }
    }
    if (changed) {
        std::vector<PlateRecord> kept;
        kept.reserve(n);
        for (std::size_t i = 0; i < n; ++i)
            if (!removed[i]) kept.push_back(std::move(records[i]));
        records = std::move(kept);
    }
    return changed;
}

} // namespace detail

// Removes multiple recognitions of the same vehicle. Input must be sorted by
// timestamp and hold a single direction. Passes repeat until a fixpoint so the
// operation is idempotent even when removals pull distant twins into range.
inline std::vector<PlateRecord> dedup_multiple_recognitions(std::vector<PlateRecord> records,
                                                            const CleanseConfig& cfg = {}) {
    while (detail::dedup_pass(records, cfg)) {
    }
    return records;
}

// Keeps records with ocr_score >= threshold (inclusive) that were actually read.
inline std::vector<PlateRecord> filter_low_ocr(const std::vector<PlateRecord>& records,
                                               int threshold) {
    std::vector<PlateRecord> out;
    out.reserve(records.size());
    for (const auto& r : records)
        if (r.read_flag == ReadFlag::Read && r.ocr_score >= threshold) out.push_back(r);
    return out;
}

struct MatchResult {
    std::vector<StayRecord> stays;
    std::vector<PlateRecord> unmatched_entries;
    std::vector<PlateRecord> unmatched_exits;
};

// Matches exits to earlier entries of the same calendar day, greedily in
// exit-time order. Among candidates within `match_distance` edits the lowest
// distance wins, then the highest entry OCR score, then the earliest entry.
inline MatchResult match_entries_exits(std::vector<PlateRecord> entries,
                                       std::vector<PlateRecord> exits,
                                       const CleanseConfig& cfg = {}) {
    auto by_time = [](const PlateRecord& a, const PlateRecord& b) {
        return a.timestamp < b.timestamp;
    };
    std::sort(entries.begin(), entries.end(), by_time);
    std::sort(exits.begin(), exits.end(), by_time);

    std::vector<bool> taken(entries.size(), false);
    MatchResult res;
    for (const auto& exit : exits) {
        const std::int64_t day = civil::day_index(exit.timestamp);
        std::size_t best = entries.size();
        std::size_t best_dist = 0;
        for (std::size_t i = 0; i < entries.size(); ++i) {
            const auto& entry = entries[i];
            if (taken[i] || entry.timestamp > exit.timestamp) continue;
            if (civil::day_index(entry.timestamp) != day) continue;
            const std::size_t d = levenshtein(entry.plate, exit.plate);
            if (d > static_cast<std::size_t>(cfg.match_distance)) continue;
            if (best == entries.size() || d < best_dist ||
                (d == best_dist && entry.ocr_score > entries[best].ocr_score))
                best = i, best_dist = d;
        }
        if (best == entries.size()) {
            res.unmatched_exits.push_back(exit);
        } else {
            taken[best] = true;
            res.stays.push_back({entries[best].timestamp, exit.timestamp,
                                 entries[best].ocr_score, exit.ocr_score});
        }
    }
    for (std::size_t i = 0; i < entries.size(); ++i)
        if (!taken[i]) res.unmatched_entries.push_back(entries[i]);
    return res;
}

} // namespace campus::lpr
