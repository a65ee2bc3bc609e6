#pragma once

#include "fireseverity/raster.hpp"

namespace fireseverity {

enum class ResampleMethod { Nearest, Bilinear };

// Samples src at the target pixel centers. Bilinear skips nodata neighbors
// by renormalizing the remaining weights; a pixel with no valid contributor
// becomes nodata. Source and target must share a CRS.
RasterGrid resample_to_grid(const RasterGrid& src, const GridGeometry& target,
                            ResampleMethod method);

} // namespace fireseverity
