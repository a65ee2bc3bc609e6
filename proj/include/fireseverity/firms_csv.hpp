#pragma once

#include "fireseverity/events.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace fireseverity {

struct CsvRejection {
    std::size_t row_number; // 1-based data-row index (header excluded)
    std::string reason;
};

struct FirmsReadResult {
    std::vector<FireEvent> events;     // valid rows, file order
    std::vector<CsvRejection> rejections;
};

// Best-effort FIRMS archive ingest: malformed rows are collected, not fatal.
FirmsReadResult read_firms_csv(const std::filesystem::path& path);

// CSV with columns row_number, reason.
void write_rejection_report(const std::vector<CsvRejection>& rejections,
                            const std::filesystem::path& path);

void write_events_csv(const std::vector<FireEvent>& events,
                      const std::filesystem::path& path);

} // namespace fireseverity
