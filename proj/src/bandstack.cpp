#include "fireseverity/bandstack.hpp"

#include "fireseverity/errors.hpp"
#include "fireseverity/geotiff.hpp"

#include <string>

namespace fireseverity {

const RasterGrid& BandStack::band(int band_index) const {
    auto it = bands.find(band_index);
    if (it == bands.end())
        throw ValidationError("band " + std::to_string(band_index) + " (" +
                              std::string(BandSchema::canonical().name(band_index)) +
                              ") is absent from the stack");
    return it->second;
}

void BandStack::put(int band_index, RasterGrid grid) {
    if (band_index < 1 || band_index > BandSchema::kBandCount)
        throw ValidationError("band index " + std::to_string(band_index) +
                              " outside schema range 1..36");
    if (!(grid.geometry() == geometry))
        throw ValidationError("band " + std::to_string(band_index) +
                              " geometry differs from the stack geometry");
    bands.insert_or_assign(band_index, std::move(grid));
}

BandStack read_band_stack(const std::filesystem::path& path) {
    GeoTiffImage img = read_geotiff(path);
    const auto& schema = BandSchema::canonical();

    if (img.bands.size() > BandSchema::kBandCount)
        throw InputError(path.string() + ": " + std::to_string(img.bands.size()) +
                         " bands exceed the 36-band schema");

    bool any_description = false;
    for (const auto& b : img.bands) any_description |= !b.description.empty();

    BandStack stack;
    stack.geometry = img.geometry;
    for (size_t i = 0; i < img.bands.size(); ++i) {
        int index;
        if (any_description) {
            if (img.bands[i].description.empty())
                throw InputError(path.string() + ": band " + std::to_string(i + 1) +
                                 " lacks a description while others are named");
            auto found = schema.index_of(img.bands[i].description);
            if (!found)
                throw InputError(path.string() + ": band description '" +
                                 img.bands[i].description + "' is not a schema band name");
            index = *found;
        } else {
            index = int(i) + 1; // positional fallback
        }
        RasterGrid grid(stack.geometry, 0.0);
        grid.values() = std::move(img.bands[i].values);
        if (stack.bands.count(index))
            throw InputError(path.string() + ": band '" +
                             std::string(schema.name(index)) + "' appears twice");
        stack.bands.emplace(index, std::move(grid));
    }
    return stack;
}

BandStack fill_missing_bands(const BandStack& stack) {
    BandStack out = stack;
    for (const auto& entry : BandSchema::canonical().entries()) {
        if (!out.has(entry.band_index))
            out.bands.emplace(entry.band_index,
                              RasterGrid::constant(out.geometry, entry.fill_if_missing));
    }
    return out;
}

void write_band_stack(const BandStack& stack, const std::filesystem::path& path) {
    if (!stack.complete()) {
        std::string missing;
        for (const auto& entry : BandSchema::canonical().entries())
            if (!stack.has(entry.band_index)) {
                if (!missing.empty()) missing += ", ";
                missing += entry.name;
            }
        throw ValidationError("stack is incomplete; missing bands: " + missing);
    }
    std::vector<GeoTiffOutputBand> bands;
    bands.reserve(BandSchema::kBandCount);
    for (const auto& entry : BandSchema::canonical().entries())
        bands.push_back({std::string(entry.name), &stack.band(entry.band_index).values()});
    write_geotiff(path, stack.geometry, bands);
}

} // namespace fireseverity
