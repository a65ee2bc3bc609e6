#pragma once

#include "fireseverity/bandstack.hpp"
#include "fireseverity/events.hpp"
#include "fireseverity/raster.hpp"

#include <vector>

namespace fireseverity {

// The seven derived spectral bands, output band indices 23..29.
enum class IndexId { NDVI, NBR, EVI, NDWI, BI, SWIR1, SWIR2 };

int output_band(IndexId id);
const char* index_name(IndexId id);

// Per-pixel formula over the stored band values. A pixel is nodata when any
// source operand is nodata or the denominator is exactly zero.
RasterGrid compute_index(const BandStack& stack, IndexId id);

// Appends bands 23..29; recomputing overwrites with identical values.
BandStack compute_all_indices(const BandStack& stack);

struct FireYearWindows {
    int year = 0;
    Date pre_start, pre_end;   // July 1 .. September 30 of year
    Date post_start, post_end; // February 1 .. March 30 of year+1
};

// Supported fire years: 2012..2023.
FireYearWindows fire_year_windows(int year);

enum class CompositeStatistic { Median, Mean };

// Per-pixel statistic over valid values; nodata only where no scene is valid.
RasterGrid composite(const std::vector<RasterGrid>& scenes, CompositeStatistic statistic);

// Pre-fire NBR minus post-fire NBR; positive values indicate burn severity.
RasterGrid dnbr(const RasterGrid& pre_nbr, const RasterGrid& post_nbr);

} // namespace fireseverity
