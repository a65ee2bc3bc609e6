#pragma once

#include "fireseverity/raster.hpp"

#include <vector>

namespace fireseverity {

// Cell offsets whose center distance is within the radius; includes (0,0).
struct FocalWindow {
    double radius_m = 0.0;
    std::vector<std::pair<int, int>> offsets; // (drow, dcol)

    static FocalWindow build(double radius_m, double pixel_w_m, double pixel_h_m);
};

// Slope in degrees via Horn's 3x3 finite differences; edges use clamped
// (shrunken) windows. With strict_nodata, any nodata neighbor makes the
// output nodata; otherwise nodata neighbors fall back to the center value.
RasterGrid slope(const RasterGrid& dem, double meters_per_unit = 1.0,
                 bool strict_nodata = true);

// Mean of valid values within the circular kernel; shrinks at edges; nodata
// only where no valid cell exists in the window.
RasterGrid focal_mean(const RasterGrid& grid, double radius_m);

// Elevation minus the focal mean within the radius. Evaluated as the mean of
// center-minus-neighbor differences so a constant offset cancels exactly.
RasterGrid tpi(const RasterGrid& dem, double radius_m);

} // namespace fireseverity
