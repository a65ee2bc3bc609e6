#include "fireseverity/resample.hpp"

#include "fireseverity/errors.hpp"
#include "fireseverity/parallel.hpp"

#include <cmath>

namespace fireseverity {

namespace {

double sample_nearest(const RasterGrid& src, double fx, double fy) {
    int c = int(std::lround(fx));
    int r = int(std::lround(fy));
    if (c < 0 || c >= src.width() || r < 0 || r >= src.height())
        return RasterGrid::nodata_value();
    return src.at(r, c);
}

double sample_bilinear(const RasterGrid& src, double fx, double fy) {
    int c0 = int(std::floor(fx));
    int r0 = int(std::floor(fy));
    double tx = fx - c0;
    double ty = fy - r0;
    const double w[4] = {(1 - tx) * (1 - ty), tx * (1 - ty), (1 - tx) * ty, tx * ty};
    const int cc[4] = {c0, c0 + 1, c0, c0 + 1};
    const int rr[4] = {r0, r0, r0 + 1, r0 + 1};

    double acc = 0.0, wsum = 0.0;
    for (int k = 0; k < 4; ++k) {
        if (cc[k] < 0 || cc[k] >= src.width() || rr[k] < 0 || rr[k] >= src.height()) continue;
        double v = src.at(rr[k], cc[k]);
        if (RasterGrid::is_nodata(v)) continue;
        acc += w[k] * v;
        wsum += w[k];
    }
    if (wsum <= 0.0) return RasterGrid::nodata_value();
    return acc / wsum;
}

} // namespace

RasterGrid resample_to_grid(const RasterGrid& src, const GridGeometry& target,
                            ResampleMethod method) {
    if (src.geometry().crs_id != target.crs_id)
        throw ValidationError("resample: CRS mismatch ('" + src.geometry().crs_id +
                              "' vs '" + target.crs_id + "')");

    RasterGrid out(target, 0.0);
    const GridGeometry& sg = src.geometry();

#pragma omp parallel for schedule(static) num_threads(thread_count())
    for (int r = 0; r < target.height; ++r) {
        double y = target.center_y(r);
        double fy = (y - sg.origin_y) / sg.pixel_size_y - 0.5;
        for (int c = 0; c < target.width; ++c) {
            double x = target.center_x(c);
            double fx = (x - sg.origin_x) / sg.pixel_size_x - 0.5;
            out.set(r, c, method == ResampleMethod::Nearest ? sample_nearest(src, fx, fy)
                                                            : sample_bilinear(src, fx, fy));
        }
    }
    return out;
}

} // namespace fireseverity
