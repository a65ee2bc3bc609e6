#include "fireseverity/fsi.hpp"

#include "fireseverity/errors.hpp"
#include "fireseverity/textio.hpp"

#include <cmath>

namespace fireseverity {

void FsiParams::validate() const {
    if (area == Area::FixedKm2 && !(fixed_area_km2 > 0.0))
        throw ValidationError("FsiParams: fixed area must be positive");
    if (!(duration_days > 0.0))
        throw ValidationError("FsiParams: duration must be positive");
}

double FsiParams::term(const FireEvent& e) const {
    double a = area == Area::ScanTrack ? e.scan * e.track : fixed_area_km2;
    double i = intensity == Intensity::Frp ? e.frp : e.brightness;
    return a * i * duration_days;
}

double fsi(const std::vector<FireEvent>& events, const FsiParams& params) {
    params.validate();
    CompensatedSum acc;
    for (const auto& e : events) acc.add(params.term(e));
    return acc.value();
}

namespace {

FsiSeries series_for(const std::vector<FireEvent>& events, const FsiParams& params,
                     PeriodGranularity granularity) {
    params.validate();
    auto buckets = partition_by_period(events, granularity);
    FsiSeries out;
    out.reserve(buckets.size());
    for (const auto& [period, bucket] : buckets) {
        FsiSeriesRow row;
        row.period = period;
        row.event_count = bucket.size();
        row.fsi_sum = fsi(bucket, params);
        row.fsi_mean = row.fsi_sum / double(row.event_count);
        out.push_back(row);
    }
    return out;
}

} // namespace

FsiSeries monthly_counts(const std::vector<FireEvent>& events, const FsiParams& params) {
    return series_for(events, params, PeriodGranularity::Month);
}

FsiSeries annual_mean_fsi(const std::vector<FireEvent>& events, const FsiParams& params) {
    return series_for(events, params, PeriodGranularity::CalendarYear);
}

void write_fsi_series_csv(const FsiSeries& series, const std::filesystem::path& path) {
    std::string out = "period,event_count,fsi_sum,fsi_mean\n";
    for (const auto& row : series)
        out += csv_join({row.period.to_string(), std::to_string(row.event_count),
                         format_double(row.fsi_sum), format_double(row.fsi_mean)});
    write_text_file(path, out);
}

} // namespace fireseverity
