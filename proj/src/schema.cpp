#include "fireseverity/schema.hpp"

namespace fireseverity {

BandSchema::BandSchema()
    : entries_{{
          {1, "SR_B1", BandSource::Landsat, 0.0},
          {2, "SR_B2", BandSource::Landsat, 0.0},
          {3, "SR_B3", BandSource::Landsat, 0.0},
          {4, "SR_B4", BandSource::Landsat, 0.0},
          {5, "SR_B5", BandSource::Landsat, 0.0},
          {6, "SR_B6", BandSource::Landsat, 0.0},
          {7, "SR_B7", BandSource::Landsat, 0.0},
          {8, "SR_QA_AEROSOL", BandSource::Landsat, 0.0},
          {9, "SR_ATMOS_OPACITY", BandSource::Landsat, 0.0},
          {10, "SR_CLOUD_QA", BandSource::Landsat, 0.0},
          {11, "ST_B6", BandSource::Landsat, 0.0},
          {12, "ST_B10", BandSource::Landsat, 0.0},
          {13, "ST_ATRAN", BandSource::Landsat, 0.0},
          {14, "ST_CDIST", BandSource::Landsat, 0.0},
          {15, "ST_DRAD", BandSource::Landsat, 0.0},
          {16, "ST_EMIS", BandSource::Landsat, 0.0},
          {17, "ST_EMSD", BandSource::Landsat, 0.0},
          {18, "ST_QA", BandSource::Landsat, 0.0},
          {19, "ST_TRAD", BandSource::Landsat, 0.0},
          {20, "ST_URAD", BandSource::Landsat, 0.0},
          {21, "QA_PIXEL", BandSource::Landsat, 0.0},
          {22, "QA_RADSAT", BandSource::Landsat, 0.0},
          {23, "NDVI", BandSource::Derived, 0.0},
          {24, "NBR", BandSource::Derived, 0.0},
          {25, "EVI", BandSource::Derived, 0.0},
          {26, "NDWI", BandSource::Derived, 0.0},
          {27, "BI", BandSource::Derived, 0.0},
          {28, "SWIR1", BandSource::Derived, 0.0},
          {29, "SWIR2", BandSource::Derived, 0.0},
          {30, "Elevation", BandSource::Terrain, 0.0},
          {31, "Slope", BandSource::Terrain, 0.0},
          {32, "TPI", BandSource::Terrain, 0.0},
          {33, "Mean_Temperature", BandSource::Climate, 0.0},
          {34, "Total_Precipitation", BandSource::Climate, 0.0},
          {35, "SMI", BandSource::Climate, 0.0},
          {36, "dNBR", BandSource::Derived, 0.0},
      }} {}

const BandSchema& BandSchema::canonical() {
    static const BandSchema schema;
    return schema;
}

std::optional<int> BandSchema::index_of(std::string_view name) const {
    for (const auto& e : entries_) {
        if (e.name == name) return e.band_index;
    }
    return std::nullopt;
}

} // namespace fireseverity
