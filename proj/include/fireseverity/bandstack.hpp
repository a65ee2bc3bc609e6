#pragma once

#include "fireseverity/raster.hpp"
#include "fireseverity/schema.hpp"

#include <filesystem>
#include <map>

namespace fireseverity {

// Ordered raster stack following the canonical 36-band schema. Bands may be
// absent until fill_missing_bands has run.
struct BandStack {
    GridGeometry geometry;
    std::map<int, RasterGrid> bands; // keyed by 1-based schema band index

    bool has(int band_index) const { return bands.count(band_index) != 0; }
    const RasterGrid& band(int band_index) const;
    void put(int band_index, RasterGrid grid);
    bool complete() const { return bands.size() == BandSchema::kBandCount; }
};

// Maps file bands to schema indices by description when present, by position
// otherwise. At most 36 bands; per-band dimensions must agree.
BandStack read_band_stack(const std::filesystem::path& path);

// Adds every absent schema band as a constant raster of its fill value.
BandStack fill_missing_bands(const BandStack& stack);

// Writes a complete stack as a 36-band float32 GeoTIFF with schema band
// descriptions and a -9999 nodata tag.
void write_band_stack(const BandStack& stack, const std::filesystem::path& path);

} // namespace fireseverity
