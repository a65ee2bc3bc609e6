#pragma once

#include "fireseverity/raster.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace fireseverity {

// Minimal GeoTIFF codec. Covers the layouts this pipeline ingests and
// produces: classic TIFF, both endiannesses, strips or tiles, chunky or
// planar samples, uncompressed or deflate, integer and float samples,
// multi-sample single page or one band per page. Georeferencing is carried
// via ModelPixelScale/ModelTiepoint (or an axis-aligned ModelTransformation),
// band descriptions via GDAL metadata, nodata via the GDAL nodata tag.

struct GeoTiffBand {
    std::string description; // empty when the file carries none
    std::vector<double> values; // row-major, nodata normalized to NaN
};

struct GeoTiffImage {
    GridGeometry geometry;
    std::optional<double> nodata; // sentinel as stored in the file
    std::vector<GeoTiffBand> bands;
};

GeoTiffImage read_geotiff(const std::filesystem::path& path);

struct GeoTiffOutputBand {
    std::string description;
    const std::vector<double>* values; // NaN encodes nodata
};

// Writes float32 samples, one page, contiguous planar layout, uncompressed.
// NaN cells are encoded as `nodata_encoding` and the nodata tag is set.
void write_geotiff(const std::filesystem::path& path, const GridGeometry& geometry,
                   const std::vector<GeoTiffOutputBand>& bands,
                   double nodata_encoding = -9999.0);

} // namespace fireseverity
