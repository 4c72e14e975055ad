#pragma once

#include <cstdint>
#include <string>

namespace campus::lpr {

enum class ReadFlag { Read, NotRead };
enum class Direction { Entry, Exit };

// One raw camera output row. A NotRead flag means the plate string is unusable
// regardless of its OCR score.
struct PlateRecord {
    std::int64_t timestamp = 0; // seconds, naive local time
    std::string plate;          // uppercase alphanumeric, possibly empty
    int ocr_score = 0;          // 0..100
    ReadFlag read_flag = ReadFlag::Read;
    Direction direction = Direction::Entry;
};

struct CleanseConfig {
    int dedup_lookahead = 5;     // a duplicate must re-appear within this many records
    int dedup_distance = 2;      // edit-distance threshold for duplicates
    int ocr_threshold_entry = 75;
    int ocr_threshold_exit = 65;
    int match_distance = 2;      // edit-distance threshold for entry/exit matching
};

// A matched entry/exit pair.
struct StayRecord {
    std::int64_t entry_time = 0;
    std::int64_t exit_time = 0;
    int entry_score = 0;
    int exit_score = 0;

    double stay_hours() const { return static_cast<double>(exit_time - entry_time) / 3600.0; }
};

} // namespace campus::lpr
