#include "fireseverity/indices.hpp"

#include "fireseverity/errors.hpp"
#include "fireseverity/parallel.hpp"

#include <algorithm>
#include <cmath>

namespace fireseverity {

namespace {

constexpr double kNoData = std::numeric_limits<double>::quiet_NaN();

inline double ratio(double num, double den) {
    if (den == 0.0) return kNoData;
    return num / den;
}

inline bool invalid(double v) { return std::isnan(v); }

} // namespace

int output_band(IndexId id) {
    switch (id) {
        case IndexId::NDVI: return 23;
        case IndexId::NBR: return 24;
        case IndexId::EVI: return 25;
        case IndexId::NDWI: return 26;
        case IndexId::BI: return 27;
        case IndexId::SWIR1: return 28;
        case IndexId::SWIR2: return 29;
    }
    return 0;
}

const char* index_name(IndexId id) {
    switch (id) {
        case IndexId::NDVI: return "NDVI";
        case IndexId::NBR: return "NBR";
        case IndexId::EVI: return "EVI";
        case IndexId::NDWI: return "NDWI";
        case IndexId::BI: return "BI";
        case IndexId::SWIR1: return "SWIR1";
        case IndexId::SWIR2: return "SWIR2";
    }
    return "";
}

RasterGrid compute_index(const BandStack& stack, IndexId id) {
    auto need = [&](int b) -> const std::vector<double>& {
        if (!stack.has(b))
            throw ValidationError(std::string("compute_index(") + index_name(id) +
                                  "): missing source band " + std::to_string(b));
        return stack.band(b).values();
    };

    RasterGrid out(stack.geometry, 0.0);
    auto& o = out.values();
    const std::int64_t n = std::int64_t(o.size());

    switch (id) {
        case IndexId::NDVI: {
            const auto &b5 = need(5), &b4 = need(4);
#pragma omp parallel for schedule(static) num_threads(thread_count())
            for (std::int64_t i = 0; i < n; ++i)
                o[i] = (invalid(b5[i]) || invalid(b4[i])) ? kNoData
                                                          : ratio(b5[i] - b4[i], b5[i] + b4[i]);
            break;
        }
        case IndexId::NBR: {
            const auto &b5 = need(5), &b7 = need(7);
#pragma omp parallel for schedule(static) num_threads(thread_count())
            for (std::int64_t i = 0; i < n; ++i)
                o[i] = (invalid(b5[i]) || invalid(b7[i])) ? kNoData
                                                          : ratio(b5[i] - b7[i], b5[i] + b7[i]);
            break;
        }
        case IndexId::EVI: {
            const auto &b5 = need(5), &b4 = need(4), &b2 = need(2);
#pragma omp parallel for schedule(static) num_threads(thread_count())
            for (std::int64_t i = 0; i < n; ++i) {
                if (invalid(b5[i]) || invalid(b4[i]) || invalid(b2[i])) {
                    o[i] = kNoData;
                } else {
                    double den = b5[i] + 6.0 * b4[i] - 7.5 * b2[i] + 1.0;
                    o[i] = den == 0.0 ? kNoData : 2.5 * (b5[i] - b4[i]) / den;
                }
            }
            break;
        }
        case IndexId::NDWI: {
            const auto &b3 = need(3), &b5 = need(5);
#pragma omp parallel for schedule(static) num_threads(thread_count())
            for (std::int64_t i = 0; i < n; ++i)
                o[i] = (invalid(b3[i]) || invalid(b5[i])) ? kNoData
                                                          : ratio(b3[i] - b5[i], b3[i] + b5[i]);
            break;
        }
        case IndexId::BI: {
            const auto &b7 = need(7), &b5 = need(5);
#pragma omp parallel for schedule(static) num_threads(thread_count())
            for (std::int64_t i = 0; i < n; ++i)
                o[i] = (invalid(b7[i]) || invalid(b5[i])) ? kNoData
                                                          : ratio(b7[i] - b5[i], b7[i] + b5[i]);
            break;
        }
        case IndexId::SWIR1: {
            const auto& b6 = need(6);
            o = b6;
            break;
        }
        case IndexId::SWIR2: {
            const auto& b7 = need(7);
            o = b7;
            break;
        }
    }
    return out;
}

BandStack compute_all_indices(const BandStack& stack) {
    for (int b = 1; b <= BandSchema::kLandsatBandCount; ++b)
        if (!stack.has(b))
            throw ValidationError("compute_all_indices: Landsat band " + std::to_string(b) +
                                  " is absent; run fill_missing_bands first");
    BandStack out = stack;
    for (IndexId id : {IndexId::NDVI, IndexId::NBR, IndexId::EVI, IndexId::NDWI, IndexId::BI,
                       IndexId::SWIR1, IndexId::SWIR2})
        out.bands.insert_or_assign(output_band(id), compute_index(stack, id));
    return out;
}

FireYearWindows fire_year_windows(int year) {
    if (year < 2012 || year > 2023)
        throw ValidationError("fire year " + std::to_string(year) +
                              " outside supported range 2012..2023");
    FireYearWindows w;
    w.year = year;
    w.pre_start = {year, 7, 1};
    w.pre_end = {year, 9, 30};
    w.post_start = {year + 1, 2, 1};
    w.post_end = {year + 1, 3, 30};
    return w;
}

RasterGrid composite(const std::vector<RasterGrid>& scenes, CompositeStatistic statistic) {
    if (scenes.empty()) throw ValidationError("composite: no scenes");
    const GridGeometry& geom = scenes[0].geometry();
    for (const auto& s : scenes)
        if (!(s.geometry() == geom)) throw ValidationError("composite: geometry mismatch");

    RasterGrid out(geom, 0.0);
    auto& o = out.values();
    const std::int64_t n = std::int64_t(o.size());

#pragma omp parallel for schedule(static) num_threads(thread_count())
    for (std::int64_t i = 0; i < n; ++i) {
        double buf[64];
        std::vector<double> dyn;
        double* vals = scenes.size() <= 64 ? buf : (dyn.resize(scenes.size()), dyn.data());
        std::size_t k = 0;
        for (const auto& s : scenes) {
            double v = s.values()[std::size_t(i)];
            if (!invalid(v)) vals[k++] = v;
        }
        if (k == 0) {
            o[i] = kNoData;
        } else if (statistic == CompositeStatistic::Mean) {
            double sum = 0.0;
            for (std::size_t j = 0; j < k; ++j) sum += vals[j];
            o[i] = sum / double(k);
        } else {
            std::sort(vals, vals + k);
            o[i] = k % 2 == 1 ? vals[k / 2] : 0.5 * (vals[k / 2 - 1] + vals[k / 2]);
        }
    }
    return out;
}

RasterGrid dnbr(const RasterGrid& pre_nbr, const RasterGrid& post_nbr) {
    if (!(pre_nbr.geometry() == post_nbr.geometry()))
        throw ValidationError("dnbr: geometry mismatch");
    RasterGrid out(pre_nbr.geometry(), 0.0);
    auto& o = out.values();
    const auto& a = pre_nbr.values();
    const auto& b = post_nbr.values();
    const std::int64_t n = std::int64_t(o.size());
#pragma omp parallel for schedule(static) num_threads(thread_count())
    for (std::int64_t i = 0; i < n; ++i)
        o[i] = (invalid(a[i]) || invalid(b[i])) ? kNoData : a[i] - b[i];
    return out;
}

} // namespace fireseverity
