#pragma once

#include "fireseverity/events.hpp"
#include "fireseverity/preprocess.hpp"

#include <filesystem>
#include <vector>

namespace fireseverity {

// Operationalization of the severity index for point detections: burned
// area from the scan x track footprint (or a fixed area), intensity from
// FRP or brightness, and a fixed per-detection duration.
struct FsiParams {
    enum class Area { ScanTrack, FixedKm2 };
    enum class Intensity { Frp, Brightness };

    Area area = Area::ScanTrack;
    double fixed_area_km2 = 1.0; // used when area == FixedKm2
    Intensity intensity = Intensity::Frp;
    double duration_days = 1.0;

    void validate() const;
    double term(const FireEvent& e) const; // area * intensity * duration
};

// Neumaier-compensated accumulator; order-independent to ~1e-16 relative.
struct CompensatedSum {
    double sum = 0.0;
    double comp = 0.0;

    void add(double v) {
        double t = sum + v;
        if (std::abs(sum) >= std::abs(v))
            comp += (sum - t) + v;
        else
            comp += (v - t) + sum;
        sum = t;
    }
    double value() const { return sum + comp; }
};

// Sum over events of area x intensity x duration.
double fsi(const std::vector<FireEvent>& events, const FsiParams& params);

struct FsiSeriesRow {
    PeriodKey period;
    std::uint64_t event_count = 0;
    double fsi_sum = 0.0;
    double fsi_mean = 0.0; // fsi_sum / event_count
};

using FsiSeries = std::vector<FsiSeriesRow>;

// Chronological per-month series with counts and FSI aggregates.
FsiSeries monthly_counts(const std::vector<FireEvent>& events, const FsiParams& params);

// Chronological per-year series; years with no events are omitted.
FsiSeries annual_mean_fsi(const std::vector<FireEvent>& events, const FsiParams& params);

// CSV: period,event_count,fsi_sum,fsi_mean.
void write_fsi_series_csv(const FsiSeries& series, const std::filesystem::path& path);

} // namespace fireseverity
