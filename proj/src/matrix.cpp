#include "fireseverity/matrix.hpp"

#include "fireseverity/errors.hpp"

#include <cmath>
#include <cstring>
#include <fstream>

namespace fireseverity {

namespace {

constexpr char kMagic[4] = {'F', 'S', 'M', 'X'};
constexpr std::uint32_t kVersion = 1;

void put_u32(std::string& buf, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) buf.push_back(char(v >> (8 * i)));
}
void put_i32(std::string& buf, std::int32_t v) { put_u32(buf, std::uint32_t(v)); }
void put_f32(std::string& buf, float f) {
    std::uint32_t v;
    std::memcpy(&v, &f, 4);
    put_u32(buf, v);
}

struct Cursor {
    const std::uint8_t* p;
    std::size_t n;
    std::size_t off = 0;
    const std::string path;

    void need(std::size_t k) const {
        if (off + k > n) throw InputError(path + ": truncated matrix file");
    }
    std::uint32_t u32() {
        need(4);
        std::uint32_t v = 0;
        for (int i = 3; i >= 0; --i) v = (v << 8) | p[off + std::size_t(i)];
        off += 4;
        return v;
    }
    std::int32_t i32() { return std::int32_t(u32()); }
    float f32() {
        std::uint32_t v = u32();
        float f;
        std::memcpy(&f, &v, 4);
        return f;
    }
    std::string str(std::size_t k) {
        need(k);
        std::string s(reinterpret_cast<const char*>(p + off), k);
        off += k;
        return s;
    }
};

} // namespace

int FeatureMatrix::column_index(const std::string& name) const {
    for (std::size_t i = 0; i < feature_names.size(); ++i)
        if (feature_names[i] == name) return int(i);
    return -1;
}

FeatureMatrix matrix_from_stack(const BandStack& stack, int year) {
    if (!stack.complete())
        throw ValidationError("matrix_from_stack: stack must carry all 36 bands");
    const auto& schema = BandSchema::canonical();

    FeatureMatrix m;
    m.feature_names.reserve(BandSchema::kFeatureCount);
    for (int b = 1; b <= BandSchema::kFeatureCount; ++b)
        m.feature_names.emplace_back(schema.name(b));

    const RasterGrid& target = stack.band(BandSchema::kDnbrBand);
    std::vector<const RasterGrid*> feats(BandSchema::kFeatureCount);
    for (int b = 1; b <= BandSchema::kFeatureCount; ++b) feats[size_t(b - 1)] = &stack.band(b);

    for (int r = 0; r < stack.geometry.height; ++r)
        for (int c = 0; c < stack.geometry.width; ++c) {
            double t = target.at(r, c);
            if (RasterGrid::is_nodata(t)) continue;
            m.refs.push_back({year, r, c});
            for (int b = 0; b < BandSchema::kFeatureCount; ++b)
                m.features.push_back(feats[size_t(b)]->at(r, c));
            m.target.push_back(t);
        }
    return m;
}

void append_rows(FeatureMatrix& dst, const FeatureMatrix& src) {
    if (dst.rows() == 0 && dst.feature_names.empty()) {
        dst = src;
        return;
    }
    if (dst.feature_names != src.feature_names || dst.target_name != src.target_name)
        throw ValidationError("append_rows: column schema mismatch");
    dst.refs.insert(dst.refs.end(), src.refs.begin(), src.refs.end());
    dst.features.insert(dst.features.end(), src.features.begin(), src.features.end());
    dst.target.insert(dst.target.end(), src.target.begin(), src.target.end());
}

void save_matrix(const FeatureMatrix& m, const std::filesystem::path& path) {
    std::string buf;
    buf.append(kMagic, 4);
    put_u32(buf, kVersion);
    put_u32(buf, std::uint32_t(m.rows()));
    put_u32(buf, std::uint32_t(m.cols()));
    auto put_name = [&buf](const std::string& s) {
        put_u32(buf, std::uint32_t(s.size()));
        buf.append(s);
    };
    for (const auto& name : m.feature_names) put_name(name);
    put_name(m.target_name);

    const std::size_t cols = m.cols();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        put_i32(buf, m.refs[r].year);
        put_i32(buf, m.refs[r].row);
        put_i32(buf, m.refs[r].col);
        for (std::size_t c = 0; c < cols; ++c) put_f32(buf, float(m.feature(r, c)));
        put_f32(buf, float(m.target[r]));
    }

    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot open for writing: " + path.string());
    out.write(buf.data(), std::streamsize(buf.size()));
    if (!out) throw InputError("write failed: " + path.string());
}

FeatureMatrix load_matrix(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open: " + path.string());
    std::vector<std::uint8_t> data((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
    Cursor cur{data.data(), data.size(), 0, path.string()};
    if (cur.str(4) != std::string(kMagic, 4))
        throw InputError(path.string() + ": not a matrix file");
    std::uint32_t version = cur.u32();
    if (version != kVersion)
        throw InputError(path.string() + ": unsupported matrix version " +
                         std::to_string(version));
    std::uint32_t rows = cur.u32();
    std::uint32_t cols = cur.u32();

    FeatureMatrix m;
    for (std::uint32_t c = 0; c < cols; ++c) m.feature_names.push_back(cur.str(cur.u32()));
    m.target_name = cur.str(cur.u32());

    m.refs.reserve(rows);
    m.features.reserve(std::size_t(rows) * cols);
    m.target.reserve(rows);
    for (std::uint32_t r = 0; r < rows; ++r) {
        FeatureMatrix::RowRef ref;
        ref.year = cur.i32();
        ref.row = cur.i32();
        ref.col = cur.i32();
        m.refs.push_back(ref);
        for (std::uint32_t c = 0; c < cols; ++c) m.features.push_back(cur.f32());
        m.target.push_back(cur.f32());
    }
    return m;
}

} // namespace fireseverity
