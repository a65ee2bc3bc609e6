#include "fireseverity/geotiff.hpp"

#include "fireseverity/errors.hpp"
#include "fireseverity/textio.hpp"

#include <zlib.h>

#include <algorithm>
#include <cstring>
#include <fstream>
#include <map>

namespace fireseverity {

namespace {

// TIFF tags used by the codec.
enum : uint16_t {
    kTagImageWidth = 256,
    kTagImageLength = 257,
    kTagBitsPerSample = 258,
    kTagCompression = 259,
    kTagPhotometric = 262,
    kTagImageDescription = 270,
    kTagStripOffsets = 273,
    kTagSamplesPerPixel = 277,
    kTagRowsPerStrip = 278,
    kTagStripByteCounts = 279,
    kTagPlanarConfig = 284,
    kTagPageName = 285,
    kTagPredictor = 317,
    kTagTileWidth = 322,
    kTagTileLength = 323,
    kTagTileOffsets = 324,
    kTagTileByteCounts = 325,
    kTagExtraSamples = 338,
    kTagSampleFormat = 339,
    kTagModelPixelScale = 33550,
    kTagModelTiepoint = 33922,
    kTagModelTransformation = 34264,
    kTagGeoKeyDirectory = 34735,
    kTagGeoDoubleParams = 34736,
    kTagGeoAsciiParams = 34737,
    kTagGdalMetadata = 42112,
    kTagGdalNodata = 42113,
};

enum : uint16_t {
    kGeoKeyRasterType = 1025,
    kGeoKeyCitation = 1026,
    kGeoKeyGeographicType = 2048,
    kGeoKeyProjectedCSType = 3072,
};

constexpr size_t kTypeSize[13] = {0, 1, 1, 2, 4, 8, 1, 1, 2, 4, 8, 4, 8};

struct IfdEntry {
    uint16_t type = 0;
    uint64_t count = 0;
    size_t value_offset = 0; // absolute offset of the value bytes
};

class TiffParser {
public:
    TiffParser(std::vector<uint8_t> data, std::string path)
        : data_(std::move(data)), path_(std::move(path)) {
        if (data_.size() < 8) fail("file too short for a TIFF header");
        if (data_[0] == 'I' && data_[1] == 'I') {
            big_endian_ = false;
        } else if (data_[0] == 'M' && data_[1] == 'M') {
            big_endian_ = true;
        } else {
            fail("not a TIFF file (bad byte-order mark)");
        }
        if (u16(2) != 42) fail("not a classic TIFF file (bad magic)");
        size_t off = u32(4);
        while (off != 0) {
            ifd_offsets_.push_back(off);
            if (ifd_offsets_.size() > 4096) fail("IFD chain too long");
            check(off + 2 <= data_.size(), "IFD offset out of range");
            uint16_t n = u16(off);
            size_t next_ptr = off + 2 + size_t(n) * 12;
            check(next_ptr + 4 <= data_.size(), "IFD overruns file");
            off = u32(next_ptr);
        }
        if (ifd_offsets_.empty()) fail("TIFF has no directories");
    }

    size_t page_count() const { return ifd_offsets_.size(); }
    bool big_endian() const { return big_endian_; }

    std::map<uint16_t, IfdEntry> read_ifd(size_t page) const {
        size_t off = ifd_offsets_[page];
        uint16_t n = u16(off);
        std::map<uint16_t, IfdEntry> entries;
        for (uint16_t i = 0; i < n; ++i) {
            size_t e = off + 2 + size_t(i) * 12;
            uint16_t tag = u16(e);
            IfdEntry entry;
            entry.type = u16(e + 2);
            entry.count = u32(e + 4);
            if (entry.type < 1 || entry.type > 12) continue; // unknown type, skip
            size_t nbytes = kTypeSize[entry.type] * entry.count;
            entry.value_offset = nbytes <= 4 ? e + 8 : u32(e + 8);
            check(entry.value_offset + nbytes <= data_.size(), "tag value out of range");
            entries[tag] = entry;
        }
        return entries;
    }

    std::vector<uint64_t> uints(const IfdEntry& e) const {
        std::vector<uint64_t> out;
        out.reserve(e.count);
        for (uint64_t i = 0; i < e.count; ++i) {
            size_t off = e.value_offset + i * kTypeSize[e.type];
            switch (e.type) {
                case 1: case 6: case 7: out.push_back(data_[off]); break;
                case 3: case 8: out.push_back(u16(off)); break;
                case 4: case 9: out.push_back(u32(off)); break;
                default: fail("unsupported integer tag type");
            }
        }
        return out;
    }

    std::vector<double> doubles(const IfdEntry& e) const {
        std::vector<double> out;
        out.reserve(e.count);
        for (uint64_t i = 0; i < e.count; ++i) {
            size_t off = e.value_offset + i * kTypeSize[e.type];
            switch (e.type) {
                case 11: { // FLOAT
                    uint32_t bits = u32(off);
                    float f;
                    std::memcpy(&f, &bits, 4);
                    out.push_back(f);
                    break;
                }
                case 12: { // DOUBLE
                    check(off + 8 <= data_.size(), "read past end of file");
                    uint64_t bits = 0;
                    if (big_endian_)
                        for (int b = 0; b < 8; ++b) bits = (bits << 8) | data_[off + b];
                    else
                        for (int b = 7; b >= 0; --b) bits = (bits << 8) | data_[off + b];
                    double d;
                    std::memcpy(&d, &bits, 8);
                    out.push_back(d);
                    break;
                }
                default: {
                    auto v = uints(e);
                    return std::vector<double>(v.begin(), v.end());
                }
            }
        }
        return out;
    }

    std::string ascii(const IfdEntry& e) const {
        std::string s(reinterpret_cast<const char*>(data_.data() + e.value_offset),
                      e.count);
        while (!s.empty() && s.back() == '\0') s.pop_back();
        return s;
    }

    const uint8_t* bytes_at(size_t off, size_t n) const {
        check(off + n <= data_.size(), "chunk out of range");
        return data_.data() + off;
    }

    uint16_t u16(size_t off) const {
        check(off + 2 <= data_.size(), "read past end of file");
        return big_endian_ ? uint16_t(data_[off] << 8 | data_[off + 1])
                           : uint16_t(data_[off + 1] << 8 | data_[off]);
    }

    uint32_t u32(size_t off) const {
        check(off + 4 <= data_.size(), "read past end of file");
        if (big_endian_)
            return uint32_t(data_[off]) << 24 | uint32_t(data_[off + 1]) << 16 |
                   uint32_t(data_[off + 2]) << 8 | uint32_t(data_[off + 3]);
        return uint32_t(data_[off + 3]) << 24 | uint32_t(data_[off + 2]) << 16 |
               uint32_t(data_[off + 1]) << 8 | uint32_t(data_[off]);
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw InputError(path_ + ": " + msg);
    }
    void check(bool ok, const char* msg) const {
        if (!ok) fail(msg);
    }

private:
    std::vector<uint8_t> data_;
    std::string path_;
    bool big_endian_ = false;
    std::vector<size_t> ifd_offsets_;
};

std::vector<uint8_t> zlib_inflate(const uint8_t* src, size_t n, size_t expected,
                                  const std::string& path) {
    std::vector<uint8_t> out(expected);
    z_stream zs{};
    if (inflateInit(&zs) != Z_OK) throw InputError(path + ": zlib init failed");
    zs.next_in = const_cast<Bytef*>(src);
    zs.avail_in = static_cast<uInt>(n);
    zs.next_out = out.data();
    zs.avail_out = static_cast<uInt>(out.size());
    int rc = inflate(&zs, Z_FINISH);
    inflateEnd(&zs);
    if (rc != Z_STREAM_END && !(rc == Z_OK && zs.avail_out == 0))
        throw InputError(path + ": corrupt deflate chunk");
    out.resize(out.size() - zs.avail_out);
    return out;
}

struct PageLayout {
    uint32_t width = 0, height = 0;
    uint16_t samples = 1;
    uint16_t planar = 1;
    uint16_t compression = 1;
    uint16_t predictor = 1;
    std::vector<uint16_t> bits;
    std::vector<uint16_t> formats; // 1 uint, 2 int, 3 float
    bool tiled = false;
    uint32_t tile_w = 0, tile_h = 0;   // tiles
    uint32_t rows_per_strip = 0;       // strips
    std::vector<uint64_t> chunk_offsets;
    std::vector<uint64_t> chunk_counts;
};

PageLayout parse_layout(const TiffParser& tiff, const std::map<uint16_t, IfdEntry>& ifd) {
    PageLayout L;
    auto get1 = [&](uint16_t tag, uint64_t def) -> uint64_t {
        auto it = ifd.find(tag);
        if (it == ifd.end()) return def;
        auto v = tiff.uints(it->second);
        return v.empty() ? def : v[0];
    };
    L.width = static_cast<uint32_t>(get1(kTagImageWidth, 0));
    L.height = static_cast<uint32_t>(get1(kTagImageLength, 0));
    if (L.width == 0 || L.height == 0) tiff.fail("missing image dimensions");
    L.samples = static_cast<uint16_t>(get1(kTagSamplesPerPixel, 1));
    L.planar = static_cast<uint16_t>(get1(kTagPlanarConfig, 1));
    L.compression = static_cast<uint16_t>(get1(kTagCompression, 1));
    L.predictor = static_cast<uint16_t>(get1(kTagPredictor, 1));

    auto fill_per_sample = [&](uint16_t tag, uint16_t def) {
        std::vector<uint16_t> out(L.samples, def);
        auto it = ifd.find(tag);
        if (it != ifd.end()) {
            auto v = tiff.uints(it->second);
            for (size_t i = 0; i < out.size(); ++i)
                out[i] = static_cast<uint16_t>(v[std::min(i, v.size() - 1)]);
        }
        return out;
    };
    L.bits = fill_per_sample(kTagBitsPerSample, 1);
    L.formats = fill_per_sample(kTagSampleFormat, 1);

    if (ifd.count(kTagTileOffsets)) {
        L.tiled = true;
        L.tile_w = static_cast<uint32_t>(get1(kTagTileWidth, 0));
        L.tile_h = static_cast<uint32_t>(get1(kTagTileLength, 0));
        if (L.tile_w == 0 || L.tile_h == 0) tiff.fail("tiled file without tile size");
        L.chunk_offsets = tiff.uints(ifd.at(kTagTileOffsets));
        L.chunk_counts = tiff.uints(ifd.at(kTagTileByteCounts));
    } else {
        if (!ifd.count(kTagStripOffsets)) tiff.fail("no strip or tile offsets");
        L.rows_per_strip =
            static_cast<uint32_t>(std::min<uint64_t>(get1(kTagRowsPerStrip, L.height), L.height));
        if (L.rows_per_strip == 0) L.rows_per_strip = L.height;
        L.chunk_offsets = tiff.uints(ifd.at(kTagStripOffsets));
        auto it = ifd.find(kTagStripByteCounts);
        if (it != ifd.end()) {
            L.chunk_counts = tiff.uints(it->second);
        } else if (L.compression == 1) {
            // Reconstructible for uncompressed data.
            L.chunk_counts.assign(L.chunk_offsets.size(), 0);
        } else {
            tiff.fail("compressed file without strip byte counts");
        }
    }

    if (L.compression != 1 && L.compression != 8 && L.compression != 32946)
        tiff.fail("unsupported compression " + std::to_string(L.compression) +
                  " (only none and deflate are handled)");
    if (L.predictor != 1 && L.predictor != 2)
        tiff.fail("unsupported predictor " + std::to_string(L.predictor));
    for (size_t s = 0; s < L.samples; ++s) {
        uint16_t b = L.bits[s], f = L.formats[s];
        bool ok = (b == 8 || b == 16 || b == 32 || b == 64) &&
                  (f == 1 || f == 2 || f == 3) && !(f == 3 && b < 32) && !(b == 64 && f != 3);
        if (!ok)
            tiff.fail("unsupported sample layout (bits=" + std::to_string(b) +
                      ", format=" + std::to_string(f) + ")");
    }
    return L;
}

double decode_sample(const uint8_t* p, uint16_t bits, uint16_t fmt, bool be) {
    auto rd16 = [&]() -> uint16_t { return be ? uint16_t(p[0] << 8 | p[1]) : uint16_t(p[1] << 8 | p[0]); };
    auto rd32 = [&]() -> uint32_t {
        return be ? uint32_t(p[0]) << 24 | uint32_t(p[1]) << 16 | uint32_t(p[2]) << 8 | p[3]
                  : uint32_t(p[3]) << 24 | uint32_t(p[2]) << 16 | uint32_t(p[1]) << 8 | p[0];
    };
    switch (bits) {
        case 8: return fmt == 2 ? double(int8_t(p[0])) : double(p[0]);
        case 16: return fmt == 2 ? double(int16_t(rd16())) : double(rd16());
        case 32: {
            uint32_t v = rd32();
            if (fmt == 3) {
                float f;
                std::memcpy(&f, &v, 4);
                return f;
            }
            return fmt == 2 ? double(int32_t(v)) : double(v);
        }
        case 64: {
            uint64_t v = 0;
            if (be)
                for (int i = 0; i < 8; ++i) v = (v << 8) | p[i];
            else
                for (int i = 7; i >= 0; --i) v = (v << 8) | p[i];
            double d;
            std::memcpy(&d, &v, 8);
            return d;
        }
    }
    return 0.0;
}

void undo_horizontal_predictor(std::vector<uint8_t>& row_data, uint32_t cols,
                               uint16_t channels, uint16_t bits, bool be) {
    // Predictor 2 stores per-channel horizontal differences of integers.
    if (bits == 8) {
        for (uint32_t c = 1; c < cols; ++c)
            for (uint16_t s = 0; s < channels; ++s)
                row_data[c * channels + s] =
                    uint8_t(row_data[c * channels + s] + row_data[(c - 1) * channels + s]);
    } else if (bits == 16) {
        for (uint32_t c = 1; c < cols; ++c)
            for (uint16_t s = 0; s < channels; ++s) {
                size_t cur = (size_t(c) * channels + s) * 2;
                size_t prev = (size_t(c - 1) * channels + s) * 2;
                uint16_t a = be ? uint16_t(row_data[prev] << 8 | row_data[prev + 1])
                                : uint16_t(row_data[prev + 1] << 8 | row_data[prev]);
                uint16_t b = be ? uint16_t(row_data[cur] << 8 | row_data[cur + 1])
                                : uint16_t(row_data[cur + 1] << 8 | row_data[cur]);
                uint16_t v = uint16_t(a + b);
                if (be) {
                    row_data[cur] = uint8_t(v >> 8);
                    row_data[cur + 1] = uint8_t(v);
                } else {
                    row_data[cur] = uint8_t(v);
                    row_data[cur + 1] = uint8_t(v >> 8);
                }
            }
    }
}

// Decodes every band of one page into row-major double arrays.
std::vector<std::vector<double>> decode_page(const TiffParser& tiff, const PageLayout& L,
                                             const std::string& path) {
    const bool be = tiff.big_endian();
    const uint32_t w = L.width, h = L.height;
    std::vector<std::vector<double>> bands(L.samples);
    for (auto& b : bands) b.assign(size_t(w) * h, 0.0);

    const uint16_t planes = L.planar == 2 ? L.samples : 1;
    const uint16_t chans = L.planar == 2 ? 1 : L.samples;

    auto chunk_bytes = [&](size_t idx, size_t raw_size) -> std::vector<uint8_t> {
        uint64_t off = L.chunk_offsets[idx];
        uint64_t cnt = idx < L.chunk_counts.size() ? L.chunk_counts[idx] : 0;
        if (L.compression == 1) {
            if (cnt == 0) cnt = raw_size;
            const uint8_t* p = tiff.bytes_at(size_t(off), size_t(std::min<uint64_t>(cnt, raw_size)));
            return std::vector<uint8_t>(p, p + std::min<uint64_t>(cnt, raw_size));
        }
        const uint8_t* p = tiff.bytes_at(size_t(off), size_t(cnt));
        return zlib_inflate(p, size_t(cnt), raw_size, path);
    };

    if (!L.tiled) {
        const uint32_t rps = L.rows_per_strip;
        const size_t strips_per_plane = (h + rps - 1) / rps;
        if (L.chunk_offsets.size() < strips_per_plane * planes)
            tiff.fail("strip offsets shorter than expected");
        for (uint16_t plane = 0; plane < planes; ++plane) {
            uint16_t bits = L.bits[L.planar == 2 ? plane : 0];
            uint16_t fmt = L.formats[L.planar == 2 ? plane : 0];
            size_t bytes_per_px = size_t(bits / 8) * chans;
            for (size_t s = 0; s < strips_per_plane; ++s) {
                uint32_t row0 = uint32_t(s * rps);
                uint32_t nrows = std::min(rps, h - row0);
                size_t raw = size_t(nrows) * w * bytes_per_px;
                auto data = chunk_bytes(plane * strips_per_plane + s, raw);
                if (data.size() < raw) tiff.fail("strip shorter than expected");
                for (uint32_t r = 0; r < nrows; ++r) {
                    std::vector<uint8_t> row(data.begin() + size_t(r) * w * bytes_per_px,
                                             data.begin() + size_t(r + 1) * w * bytes_per_px);
                    if (L.predictor == 2) undo_horizontal_predictor(row, w, chans, bits, be);
                    for (uint32_t c = 0; c < w; ++c)
                        for (uint16_t ch = 0; ch < chans; ++ch) {
                            uint16_t band = L.planar == 2 ? plane : ch;
                            bands[band][size_t(row0 + r) * w + c] = decode_sample(
                                row.data() + (size_t(c) * chans + ch) * (bits / 8),
                                L.bits[band], L.formats[band], be);
                        }
                }
            }
        }
    } else {
        const uint32_t across = (w + L.tile_w - 1) / L.tile_w;
        const uint32_t down = (h + L.tile_h - 1) / L.tile_h;
        const size_t tiles_per_plane = size_t(across) * down;
        if (L.chunk_offsets.size() < tiles_per_plane * planes)
            tiff.fail("tile offsets shorter than expected");
        for (uint16_t plane = 0; plane < planes; ++plane) {
            uint16_t bits = L.bits[L.planar == 2 ? plane : 0];
            size_t bytes_per_px = size_t(bits / 8) * chans;
            for (uint32_t ty = 0; ty < down; ++ty)
                for (uint32_t tx = 0; tx < across; ++tx) {
                    size_t idx = plane * tiles_per_plane + size_t(ty) * across + tx;
                    size_t raw = size_t(L.tile_h) * L.tile_w * bytes_per_px;
                    auto data = chunk_bytes(idx, raw);
                    if (data.size() < raw) tiff.fail("tile shorter than expected");
                    for (uint32_t r = 0; r < L.tile_h; ++r) {
                        uint32_t gr = ty * L.tile_h + r;
                        if (gr >= h) break;
                        std::vector<uint8_t> row(
                            data.begin() + size_t(r) * L.tile_w * bytes_per_px,
                            data.begin() + size_t(r + 1) * L.tile_w * bytes_per_px);
                        if (L.predictor == 2)
                            undo_horizontal_predictor(row, L.tile_w, chans, bits, be);
                        for (uint32_t c = 0; c < L.tile_w; ++c) {
                            uint32_t gc = tx * L.tile_w + c;
                            if (gc >= w) continue;
                            for (uint16_t ch = 0; ch < chans; ++ch) {
                                uint16_t band = L.planar == 2 ? plane : ch;
                                bands[band][size_t(gr) * w + gc] = decode_sample(
                                    row.data() + (size_t(c) * chans + ch) * (bits / 8),
                                    L.bits[band], L.formats[band], be);
                            }
                        }
                    }
                }
        }
    }
    return bands;
}

// Extracts per-sample DESCRIPTION items from the GDAL metadata XML.
std::vector<std::string> parse_gdal_descriptions(const std::string& xml, size_t n_bands) {
    std::vector<std::string> out(n_bands);
    size_t pos = 0;
    while ((pos = xml.find("<Item ", pos)) != std::string::npos) {
        size_t gt = xml.find('>', pos);
        size_t end = xml.find("</Item>", pos);
        if (gt == std::string::npos || end == std::string::npos || end < gt) break;
        std::string attrs = xml.substr(pos, gt - pos);
        std::string text = xml.substr(gt + 1, end - gt - 1);
        auto attr = [&](const std::string& key) -> std::string {
            std::string pat = key + "=\"";
            size_t a = attrs.find(pat);
            if (a == std::string::npos) return {};
            a += pat.size();
            size_t b = attrs.find('"', a);
            return b == std::string::npos ? std::string{} : attrs.substr(a, b - a);
        };
        if (attr("name") == "DESCRIPTION") {
            auto sample = parse_int(attr("sample"));
            if (sample && *sample >= 0 && size_t(*sample) < n_bands)
                out[size_t(*sample)] = text;
        }
        pos = end + 7;
    }
    return out;
}

void parse_geo_tags(const TiffParser& tiff, const std::map<uint16_t, IfdEntry>& ifd,
                    GridGeometry& geom) {
    auto scale_it = ifd.find(kTagModelPixelScale);
    auto tie_it = ifd.find(kTagModelTiepoint);
    auto xf_it = ifd.find(kTagModelTransformation);
    if (scale_it != ifd.end() && tie_it != ifd.end()) {
        auto scale = tiff.doubles(scale_it->second);
        auto tie = tiff.doubles(tie_it->second);
        if (scale.size() >= 2 && tie.size() >= 6) {
            geom.pixel_size_x = scale[0];
            geom.pixel_size_y = -scale[1];
            geom.origin_x = tie[3] - tie[0] * scale[0];
            geom.origin_y = tie[4] + tie[1] * scale[1];
        }
    } else if (xf_it != ifd.end()) {
        auto t = tiff.doubles(xf_it->second);
        if (t.size() >= 8) {
            if (t[1] != 0.0 || t[4] != 0.0)
                tiff.fail("rotated rasters are not supported");
            geom.pixel_size_x = t[0];
            geom.pixel_size_y = t[5];
            geom.origin_x = t[3];
            geom.origin_y = t[7];
        }
    }

    auto dir_it = ifd.find(kTagGeoKeyDirectory);
    if (dir_it == ifd.end()) return;
    auto dir = tiff.uints(dir_it->second);
    std::string ascii_params;
    if (auto it = ifd.find(kTagGeoAsciiParams); it != ifd.end())
        ascii_params = tiff.ascii(it->second);
    if (dir.size() < 4) return;
    size_t nkeys = size_t(dir[3]);
    std::string citation;
    int epsg = 0;
    for (size_t k = 0; k < nkeys && 4 + 4 * k + 3 < dir.size(); ++k) {
        uint16_t key = uint16_t(dir[4 + 4 * k]);
        uint16_t loc = uint16_t(dir[4 + 4 * k + 1]);
        uint16_t count = uint16_t(dir[4 + 4 * k + 2]);
        uint16_t value = uint16_t(dir[4 + 4 * k + 3]);
        if (key == kGeoKeyCitation && loc == kTagGeoAsciiParams) {
            size_t start = value;
            if (start < ascii_params.size()) {
                std::string s = ascii_params.substr(start, count);
                while (!s.empty() && (s.back() == '|' || s.back() == '\0')) s.pop_back();
                citation = s;
            }
        } else if ((key == kGeoKeyProjectedCSType || key == kGeoKeyGeographicType) &&
                   loc == 0 && value != 32767) {
            epsg = value;
        }
    }
    if (!citation.empty())
        geom.crs_id = citation;
    else if (epsg != 0)
        geom.crs_id = "EPSG:" + std::to_string(epsg);
}

// ---------------------------------------------------------------------------
// Writer
// ---------------------------------------------------------------------------

struct TagBlob {
    uint16_t tag;
    uint16_t type;
    uint32_t count;
    std::vector<uint8_t> payload; // little-endian, inlined when <= 4 bytes
};

void push_u16(std::vector<uint8_t>& v, uint16_t x) {
    v.push_back(uint8_t(x));
    v.push_back(uint8_t(x >> 8));
}
void push_u32(std::vector<uint8_t>& v, uint32_t x) {
    v.push_back(uint8_t(x));
    v.push_back(uint8_t(x >> 8));
    v.push_back(uint8_t(x >> 16));
    v.push_back(uint8_t(x >> 24));
}
void push_f64(std::vector<uint8_t>& v, double d) {
    uint64_t bits;
    std::memcpy(&bits, &d, 8);
    for (int i = 0; i < 8; ++i) v.push_back(uint8_t(bits >> (8 * i)));
}

TagBlob shorts_tag(uint16_t tag, const std::vector<uint16_t>& vals) {
    TagBlob b{tag, 3, uint32_t(vals.size()), {}};
    for (uint16_t v : vals) push_u16(b.payload, v);
    return b;
}
TagBlob longs_tag(uint16_t tag, const std::vector<uint32_t>& vals) {
    TagBlob b{tag, 4, uint32_t(vals.size()), {}};
    for (uint32_t v : vals) push_u32(b.payload, v);
    return b;
}
TagBlob doubles_tag(uint16_t tag, const std::vector<double>& vals) {
    TagBlob b{tag, 12, uint32_t(vals.size()), {}};
    for (double v : vals) push_f64(b.payload, v);
    return b;
}
TagBlob ascii_tag(uint16_t tag, const std::string& s) {
    TagBlob b{tag, 2, uint32_t(s.size() + 1), {}};
    b.payload.assign(s.begin(), s.end());
    b.payload.push_back(0);
    return b;
}

std::string xml_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

} // namespace

GeoTiffImage read_geotiff(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open: " + path.string());
    std::vector<uint8_t> data((std::istreambuf_iterator<char>(in)),
                              std::istreambuf_iterator<char>());
    TiffParser tiff(std::move(data), path.string());

    GeoTiffImage img;
    auto ifd0 = tiff.read_ifd(0);
    auto layout0 = parse_layout(tiff, ifd0);

    const bool pages_as_bands = tiff.page_count() > 1 && layout0.samples == 1;
    const size_t n_pages = pages_as_bands ? tiff.page_count() : 1;

    img.geometry.width = int(layout0.width);
    img.geometry.height = int(layout0.height);
    parse_geo_tags(tiff, ifd0, img.geometry);

    if (auto it = ifd0.find(kTagGdalNodata); it != ifd0.end()) {
        auto v = parse_double(trim(tiff.ascii(it->second)));
        if (v) img.nodata = *v;
    }

    for (size_t page = 0; page < n_pages; ++page) {
        auto ifd = page == 0 ? ifd0 : tiff.read_ifd(page);
        auto layout = page == 0 ? layout0 : parse_layout(tiff, ifd);
        if (layout.width != layout0.width || layout.height != layout0.height)
            throw InputError(path.string() + ": band " + std::to_string(page + 1) +
                             " has mismatched dimensions (" + std::to_string(layout.width) +
                             "x" + std::to_string(layout.height) + " vs " +
                             std::to_string(layout0.width) + "x" +
                             std::to_string(layout0.height) + ")");
        auto decoded = decode_page(tiff, layout, path.string());

        std::vector<std::string> descriptions(decoded.size());
        if (auto it = ifd.find(kTagGdalMetadata); it != ifd.end())
            descriptions = parse_gdal_descriptions(tiff.ascii(it->second), decoded.size());
        if (pages_as_bands && descriptions[0].empty()) {
            if (auto it = ifd.find(kTagPageName); it != ifd.end())
                descriptions[0] = tiff.ascii(it->second);
            else if (auto it2 = ifd.find(kTagImageDescription); it2 != ifd.end())
                descriptions[0] = tiff.ascii(it2->second);
        }

        for (size_t s = 0; s < decoded.size(); ++s) {
            GeoTiffBand band;
            band.description = descriptions[s];
            band.values = std::move(decoded[s]);
            if (img.nodata) {
                for (double& v : band.values)
                    if (v == *img.nodata) v = RasterGrid::nodata_value();
            }
            img.bands.push_back(std::move(band));
        }
    }
    return img;
}

void write_geotiff(const std::filesystem::path& path, const GridGeometry& geom,
                   const std::vector<GeoTiffOutputBand>& bands, double nodata_encoding) {
    if (bands.empty()) throw ValidationError("write_geotiff: no bands");
    const size_t cells = geom.cell_count();
    for (const auto& b : bands)
        if (b.values == nullptr || b.values->size() != cells)
            throw ValidationError("write_geotiff: band size does not match geometry");

    const uint32_t w = uint32_t(geom.width), h = uint32_t(geom.height);
    const uint16_t n = uint16_t(bands.size());
    const size_t row_bytes = size_t(w) * n * 4;
    const uint32_t rps = uint32_t(std::clamp<size_t>((1u << 20) / std::max<size_t>(row_bytes, 1), 1, h));
    const uint32_t nstrips = (h + rps - 1) / rps;

    // Pixel-interleaved float32 strips; NaN encoded as the nodata sentinel.
    std::vector<uint8_t> pixel_data;
    pixel_data.reserve(row_bytes * h);
    for (uint32_t r = 0; r < h; ++r)
        for (uint32_t c = 0; c < w; ++c)
            for (uint16_t s = 0; s < n; ++s) {
                double dv = (*bands[s].values)[size_t(r) * w + c];
                float fv = std::isnan(dv) ? float(nodata_encoding) : float(dv);
                uint32_t bits;
                std::memcpy(&bits, &fv, 4);
                push_u32(pixel_data, bits);
            }
    if (pixel_data.size() % 2 != 0) pixel_data.push_back(0);

    std::vector<uint32_t> strip_offsets(nstrips), strip_counts(nstrips);
    for (uint32_t s = 0; s < nstrips; ++s) {
        uint32_t nrows = std::min(rps, h - s * rps);
        strip_offsets[s] = uint32_t(8 + size_t(s) * rps * row_bytes);
        strip_counts[s] = uint32_t(nrows * row_bytes);
    }

    std::vector<TagBlob> tags;
    tags.push_back(longs_tag(kTagImageWidth, {w}));
    tags.push_back(longs_tag(kTagImageLength, {h}));
    tags.push_back(shorts_tag(kTagBitsPerSample, std::vector<uint16_t>(n, 32)));
    tags.push_back(shorts_tag(kTagCompression, {1}));
    tags.push_back(shorts_tag(kTagPhotometric, {1}));
    tags.push_back(longs_tag(kTagStripOffsets, strip_offsets));
    tags.push_back(shorts_tag(kTagSamplesPerPixel, {n}));
    tags.push_back(longs_tag(kTagRowsPerStrip, {rps}));
    tags.push_back(longs_tag(kTagStripByteCounts, strip_counts));
    tags.push_back(shorts_tag(kTagPlanarConfig, {1}));
    if (n > 1)
        tags.push_back(shorts_tag(kTagExtraSamples, std::vector<uint16_t>(n - 1, 0)));
    tags.push_back(shorts_tag(kTagSampleFormat, std::vector<uint16_t>(n, 3)));
    tags.push_back(doubles_tag(kTagModelPixelScale,
                               {geom.pixel_size_x, -geom.pixel_size_y, 0.0}));
    tags.push_back(doubles_tag(kTagModelTiepoint,
                               {0.0, 0.0, 0.0, geom.origin_x, geom.origin_y, 0.0}));

    std::string geo_ascii;
    std::vector<uint16_t> geokeys = {1, 1, 0, 0, kGeoKeyRasterType, 0, 1, 1};
    uint16_t nkeys = 1;
    if (!geom.crs_id.empty()) {
        geo_ascii = geom.crs_id + "|";
        geokeys.push_back(kGeoKeyCitation);
        geokeys.push_back(kTagGeoAsciiParams);
        geokeys.push_back(uint16_t(geo_ascii.size()));
        geokeys.push_back(0);
        ++nkeys;
    }
    geokeys[3] = nkeys;
    tags.push_back(shorts_tag(kTagGeoKeyDirectory, geokeys));
    if (!geo_ascii.empty()) tags.push_back(ascii_tag(kTagGeoAsciiParams, geo_ascii));

    bool any_description = false;
    for (const auto& b : bands) any_description |= !b.description.empty();
    if (any_description) {
        std::string xml = "<GDALMetadata>\n";
        for (size_t s = 0; s < bands.size(); ++s)
            if (!bands[s].description.empty())
                xml += "  <Item name=\"DESCRIPTION\" sample=\"" + std::to_string(s) +
                       "\" role=\"description\">" + xml_escape(bands[s].description) +
                       "</Item>\n";
        xml += "</GDALMetadata>\n";
        tags.push_back(ascii_tag(kTagGdalMetadata, xml));
    }
    tags.push_back(ascii_tag(kTagGdalNodata, format_double(nodata_encoding)));

    std::sort(tags.begin(), tags.end(),
              [](const TagBlob& a, const TagBlob& b) { return a.tag < b.tag; });

    const size_t ifd_offset = 8 + pixel_data.size();
    const size_t ifd_size = 2 + tags.size() * 12 + 4;
    size_t overflow_offset = ifd_offset + ifd_size;

    std::vector<uint8_t> ifd;
    push_u16(ifd, uint16_t(tags.size()));
    std::vector<uint8_t> overflow;
    for (const auto& t : tags) {
        push_u16(ifd, t.tag);
        push_u16(ifd, t.type);
        push_u32(ifd, t.count);
        if (t.payload.size() <= 4) {
            ifd.insert(ifd.end(), t.payload.begin(), t.payload.end());
            for (size_t i = t.payload.size(); i < 4; ++i) ifd.push_back(0);
        } else {
            size_t off = overflow_offset + overflow.size();
            if (off % 2 != 0) {
                overflow.push_back(0);
                off += 1;
            }
            push_u32(ifd, uint32_t(off));
            overflow.insert(overflow.end(), t.payload.begin(), t.payload.end());
        }
    }
    push_u32(ifd, 0); // no next IFD

    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot open for writing: " + path.string());
    std::vector<uint8_t> header;
    header.push_back('I');
    header.push_back('I');
    push_u16(header, 42);
    push_u32(header, uint32_t(ifd_offset));
    out.write(reinterpret_cast<const char*>(header.data()), std::streamsize(header.size()));
    out.write(reinterpret_cast<const char*>(pixel_data.data()), std::streamsize(pixel_data.size()));
    out.write(reinterpret_cast<const char*>(ifd.data()), std::streamsize(ifd.size()));
    out.write(reinterpret_cast<const char*>(overflow.data()), std::streamsize(overflow.size()));
    if (!out) throw InputError("write failed: " + path.string());
}

} // namespace fireseverity
