#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace fireseverity {

enum class BandSource { Landsat, Derived, Terrain, Climate };

struct BandSchemaEntry {
    int band_index;       // 1-based, 1..36
    std::string_view name;
    BandSource source;
    double fill_if_missing;
};

// Canonical 36-band layout: 22 Landsat bands, 7 spectral indices,
// 3 terrain bands, 3 climate bands, and the dNBR target as band 36.
class BandSchema {
public:
    static constexpr int kBandCount = 36;
    static constexpr int kLandsatBandCount = 22;
    static constexpr int kFirstIndexBand = 23; // NDVI
    static constexpr int kLastIndexBand = 29;  // SWIR2
    static constexpr int kDnbrBand = 36;
    static constexpr int kFeatureCount = 35;   // bands 1..35

    static const BandSchema& canonical();

    const std::array<BandSchemaEntry, kBandCount>& entries() const { return entries_; }
    const BandSchemaEntry& entry(int band_index) const { return entries_[band_index - 1]; }
    std::string_view name(int band_index) const { return entries_[band_index - 1].name; }

    // Band index for a schema name, if any.
    std::optional<int> index_of(std::string_view name) const;

private:
    BandSchema();
    std::array<BandSchemaEntry, kBandCount> entries_;
};

} // namespace fireseverity
