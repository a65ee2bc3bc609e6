#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

namespace fireseverity {

struct GridGeometry {
    int width = 0;
    int height = 0;
    double origin_x = 0.0;   // x of the top-left corner
    double origin_y = 0.0;   // y of the top-left corner
    double pixel_size_x = 1.0;
    double pixel_size_y = -1.0; // negative for north-up grids
    std::string crs_id;         // opaque text code, compared verbatim

    bool same_shape(const GridGeometry& o) const {
        return width == o.width && height == o.height;
    }
    bool operator==(const GridGeometry& o) const {
        return width == o.width && height == o.height && origin_x == o.origin_x &&
               origin_y == o.origin_y && pixel_size_x == o.pixel_size_x &&
               pixel_size_y == o.pixel_size_y && crs_id == o.crs_id;
    }

    // Center coordinates of pixel (row, col).
    double center_x(int col) const { return origin_x + (col + 0.5) * pixel_size_x; }
    double center_y(int row) const { return origin_y + (row + 0.5) * pixel_size_y; }

    std::size_t cell_count() const {
        return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    }
};

// Single-band float grid. Nodata is NaN internally; files may use a numeric
// sentinel, which readers normalize to NaN.
class RasterGrid {
public:
    RasterGrid() = default;
    RasterGrid(GridGeometry geom, double fill)
        : geom_(std::move(geom)),
          values_(geom_.cell_count(), fill) {}

    static RasterGrid constant(const GridGeometry& geom, double value) {
        return RasterGrid(geom, value);
    }
    static RasterGrid nodata_grid(const GridGeometry& geom) {
        return RasterGrid(geom, std::numeric_limits<double>::quiet_NaN());
    }

    const GridGeometry& geometry() const { return geom_; }
    int width() const { return geom_.width; }
    int height() const { return geom_.height; }

    double at(int row, int col) const {
        return values_[static_cast<std::size_t>(row) * geom_.width + col];
    }
    void set(int row, int col, double v) {
        values_[static_cast<std::size_t>(row) * geom_.width + col] = v;
    }

    const std::vector<double>& values() const { return values_; }
    std::vector<double>& values() { return values_; }

    static bool is_nodata(double v) { return std::isnan(v); }
    static constexpr double nodata_value() {
        return std::numeric_limits<double>::quiet_NaN();
    }

private:
    GridGeometry geom_;
    std::vector<double> values_;
};

} // namespace fireseverity
