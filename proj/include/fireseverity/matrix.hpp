#pragma once

#include "fireseverity/bandstack.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace fireseverity {

// Flattened valid-pixel rows: feature columns in schema order plus the dNBR
// target. NaN marks nodata cells. Row provenance (year, pixel row/col) is
// carried so predictions can be mapped back onto rasters.
struct FeatureMatrix {
    struct RowRef {
        std::int32_t year = 0;
        std::int32_t row = 0;
        std::int32_t col = 0;
    };

    std::vector<std::string> feature_names;
    std::string target_name = "dNBR";
    std::vector<RowRef> refs;       // one per row
    std::vector<double> features;   // row-major, rows() x cols()
    std::vector<double> target;     // one per row

    std::size_t rows() const { return target.size(); }
    std::size_t cols() const { return feature_names.size(); }

    double feature(std::size_t row, std::size_t col) const {
        return features[row * cols() + col];
    }
    void set_feature(std::size_t row, std::size_t col, double v) {
        features[row * cols() + col] = v;
    }

    int column_index(const std::string& name) const; // -1 when absent
};

// One row per pixel whose dNBR (band 36) is valid; features are bands 1..35
// in schema order, nodata carried through as NaN.
FeatureMatrix matrix_from_stack(const BandStack& stack, int year);

void append_rows(FeatureMatrix& dst, const FeatureMatrix& src);

// Little-endian binary layout: magic, version, dims, column names, then one
// record per row (year,row,col as int32; features and target as float32).
void save_matrix(const FeatureMatrix& m, const std::filesystem::path& path);
FeatureMatrix load_matrix(const std::filesystem::path& path);

} // namespace fireseverity
