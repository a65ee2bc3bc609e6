#include "fireseverity/terrain.hpp"

#include "fireseverity/errors.hpp"
#include "fireseverity/parallel.hpp"

#include <cmath>

namespace fireseverity {

namespace {

constexpr double kNoData = std::numeric_limits<double>::quiet_NaN();
constexpr double kRadToDeg = 180.0 / 3.14159265358979323846;

inline int clampi(int v, int lo, int hi) { return v < lo ? lo : (v > hi ? hi : v); }

} // namespace

FocalWindow FocalWindow::build(double radius_m, double pixel_w_m, double pixel_h_m) {
    if (radius_m <= 0.0) throw ValidationError("focal window radius must be positive");
    if (pixel_w_m <= 0.0 || pixel_h_m <= 0.0)
        throw ValidationError("focal window pixel size must be positive");
    FocalWindow w;
    w.radius_m = radius_m;
    int max_dc = int(std::floor(radius_m / pixel_w_m));
    int max_dr = int(std::floor(radius_m / pixel_h_m));
    const double r2 = radius_m * radius_m;
    for (int dr = -max_dr; dr <= max_dr; ++dr)
        for (int dc = -max_dc; dc <= max_dc; ++dc) {
            double dy = dr * pixel_h_m;
            double dx = dc * pixel_w_m;
            if (dx * dx + dy * dy <= r2) w.offsets.emplace_back(dr, dc);
        }
    return w;
}

RasterGrid slope(const RasterGrid& dem, double meters_per_unit, bool strict_nodata) {
    const GridGeometry& g = dem.geometry();
    const double px = std::abs(g.pixel_size_x) * meters_per_unit;
    const double py = std::abs(g.pixel_size_y) * meters_per_unit;
    if (px <= 0.0 || py <= 0.0) throw ValidationError("slope: non-positive pixel size");

    RasterGrid out(g, 0.0);

#pragma omp parallel for schedule(static) num_threads(thread_count())
    for (int r = 0; r < g.height; ++r) {
        for (int c = 0; c < g.width; ++c) {
            double center = dem.at(r, c);
            if (RasterGrid::is_nodata(center)) {
                out.set(r, c, kNoData);
                continue;
            }
            // 3x3 window, clamped at edges.
            double z[3][3];
            bool bad = false;
            for (int dr = -1; dr <= 1; ++dr)
                for (int dc = -1; dc <= 1; ++dc) {
                    double v = dem.at(clampi(r + dr, 0, g.height - 1),
                                      clampi(c + dc, 0, g.width - 1));
                    if (RasterGrid::is_nodata(v)) {
                        if (strict_nodata)
                            bad = true;
                        else
                            v = center;
                    }
                    z[dr + 1][dc + 1] = v;
                }
            if (bad) {
                out.set(r, c, kNoData);
                continue;
            }
            double dzdx = ((z[0][2] + 2.0 * z[1][2] + z[2][2]) -
                           (z[0][0] + 2.0 * z[1][0] + z[2][0])) /
                          (8.0 * px);
            double dzdy = ((z[2][0] + 2.0 * z[2][1] + z[2][2]) -
                           (z[0][0] + 2.0 * z[0][1] + z[0][2])) /
                          (8.0 * py);
            out.set(r, c, std::atan(std::sqrt(dzdx * dzdx + dzdy * dzdy)) * kRadToDeg);
        }
    }
    return out;
}

RasterGrid focal_mean(const RasterGrid& grid, double radius_m) {
    const GridGeometry& g = grid.geometry();
    FocalWindow win = FocalWindow::build(radius_m, std::abs(g.pixel_size_x),
                                         std::abs(g.pixel_size_y));
    RasterGrid out(g, 0.0);

#pragma omp parallel for schedule(static) num_threads(thread_count())
    for (int r = 0; r < g.height; ++r) {
        for (int c = 0; c < g.width; ++c) {
            double sum = 0.0;
            std::size_t n = 0;
            for (auto [dr, dc] : win.offsets) {
                int rr = r + dr, cc = c + dc;
                if (rr < 0 || rr >= g.height || cc < 0 || cc >= g.width) continue;
                double v = grid.at(rr, cc);
                if (RasterGrid::is_nodata(v)) continue;
                sum += v;
                ++n;
            }
            out.set(r, c, n == 0 ? kNoData : sum / double(n));
        }
    }
    return out;
}

RasterGrid tpi(const RasterGrid& dem, double radius_m) {
    const GridGeometry& g = dem.geometry();
    FocalWindow win = FocalWindow::build(radius_m, std::abs(g.pixel_size_x),
                                         std::abs(g.pixel_size_y));
    RasterGrid out(g, 0.0);

#pragma omp parallel for schedule(static) num_threads(thread_count())
    for (int r = 0; r < g.height; ++r) {
        for (int c = 0; c < g.width; ++c) {
            double center = dem.at(r, c);
            if (RasterGrid::is_nodata(center)) {
                out.set(r, c, kNoData);
                continue;
            }
            double diff_sum = 0.0;
            std::size_t n = 0;
            for (auto [dr, dc] : win.offsets) {
                int rr = r + dr, cc = c + dc;
                if (rr < 0 || rr >= g.height || cc < 0 || cc >= g.width) continue;
                double v = dem.at(rr, cc);
                if (RasterGrid::is_nodata(v)) continue;
                diff_sum += center - v;
                ++n;
            }
            out.set(r, c, diff_sum / double(n)); // n >= 1, the center is valid
        }
    }
    return out;
}

} // namespace fireseverity
