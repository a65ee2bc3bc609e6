#pragma once

#include "fireseverity/events.hpp"
#include "fireseverity/matrix.hpp"

#include <filesystem>
#include <map>
#include <vector>

namespace fireseverity {

enum class ConfidenceClass { Low, Nominal, High };

// Low < 30, Nominal 30..80, High > 80.
ConfidenceClass classify_confidence(double confidence_percent);

// Keeps events with confidence >= min_confidence (default threshold 30).
std::vector<FireEvent> filter_confidence(const std::vector<FireEvent>& events,
                                         double min_confidence = 30.0);

// First occurrence of each fully identical record wins; order preserved.
std::vector<FireEvent> dedup_events(const std::vector<FireEvent>& events);

struct PeriodKey {
    int year = 0;
    int month = 0; // 0 for calendar-year granularity

    auto operator<=>(const PeriodKey&) const = default;
    std::string to_string() const; // "2023" or "2023-10"
};

enum class PeriodGranularity { Month, CalendarYear };

std::map<PeriodKey, std::vector<FireEvent>> partition_by_period(
    const std::vector<FireEvent>& events, PeriodGranularity granularity);

// ---------------------------------------------------------------------------

enum class ScalerKind { MinMax, ZScore };

struct ScalerParams {
    ScalerKind kind = ScalerKind::MinMax;
    std::vector<double> stat_a; // per-column min (MinMax) or mean (ZScore)
    std::vector<double> stat_b; // per-column max (MinMax) or stddev (ZScore)

    std::size_t cols() const { return stat_a.size(); }
    double transform(double v, std::size_t col) const;
    double inverse(double v, std::size_t col) const;
};

// Fits over valid (non-NaN) feature entries; the target column is untouched.
ScalerParams fit_scaler(const FeatureMatrix& m, ScalerKind kind);
FeatureMatrix apply_scaler(const FeatureMatrix& m, const ScalerParams& params);
FeatureMatrix inverse_scaler(const FeatureMatrix& m, const ScalerParams& params);

void save_scaler(const ScalerParams& params, const std::filesystem::path& path);
ScalerParams load_scaler(const std::filesystem::path& path);

// ---------------------------------------------------------------------------

enum class ImputeStrategy { DropRow, ColumnMean };

// DropRow removes rows with any NaN feature or NaN target. ColumnMean fills
// NaN features with the column mean over valid entries and drops NaN-target
// rows. Throws EmptyResultError when nothing survives.
FeatureMatrix impute_missing(const FeatureMatrix& m, ImputeStrategy strategy);

} // namespace fireseverity
