#include "fireseverity/preprocess.hpp"

#include "fireseverity/errors.hpp"
#include "fireseverity/textio.hpp"

#include <cmath>
#include <cstring>
#include <unordered_set>

namespace fireseverity {

ConfidenceClass classify_confidence(double c) {
    if (!(c >= 0.0 && c <= 100.0))
        throw ValidationError("confidence " + format_double(c) + " outside [0, 100]");
    if (c < 30.0) return ConfidenceClass::Low;
    if (c <= 80.0) return ConfidenceClass::Nominal;
    return ConfidenceClass::High;
}

std::vector<FireEvent> filter_confidence(const std::vector<FireEvent>& events,
                                         double min_confidence) {
    if (!(min_confidence >= 0.0 && min_confidence <= 100.0))
        throw ValidationError("min_confidence outside [0, 100]");
    std::vector<FireEvent> out;
    out.reserve(events.size());
    for (const auto& e : events)
        if (e.confidence >= min_confidence) out.push_back(e);
    return out;
}

namespace {

struct EventHash {
    std::size_t operator()(const FireEvent& e) const {
        auto mix = [](std::size_t h, std::uint64_t v) {
            h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
            return h;
        };
        auto dbits = [](double d) {
            std::uint64_t v;
            std::memcpy(&v, &d, 8);
            return v;
        };
        std::size_t h = 0;
        h = mix(h, dbits(e.latitude));
        h = mix(h, dbits(e.longitude));
        h = mix(h, std::uint64_t(e.acq_date.year) << 16 ^ std::uint64_t(e.acq_date.month) << 8 ^
                       std::uint64_t(e.acq_date.day));
        h = mix(h, std::uint64_t(e.acq_time));
        h = mix(h, dbits(e.brightness));
        h = mix(h, dbits(e.bright_t31));
        h = mix(h, dbits(e.frp));
        h = mix(h, dbits(e.scan));
        h = mix(h, dbits(e.track));
        h = mix(h, dbits(e.confidence));
        h = mix(h, std::uint64_t(e.satellite) << 1 ^ std::uint64_t(e.daynight));
        return h;
    }
};

} // namespace

std::vector<FireEvent> dedup_events(const std::vector<FireEvent>& events) {
    std::vector<FireEvent> out;
    out.reserve(events.size());
    std::unordered_set<FireEvent, EventHash> seen;
    seen.reserve(events.size() * 2);
    for (const auto& e : events)
        if (seen.insert(e).second) out.push_back(e);
    return out;
}

std::string PeriodKey::to_string() const {
    char buf[16];
    if (month == 0)
        std::snprintf(buf, sizeof(buf), "%04d", year);
    else
        std::snprintf(buf, sizeof(buf), "%04d-%02d", year, month);
    return buf;
}

std::map<PeriodKey, std::vector<FireEvent>> partition_by_period(
    const std::vector<FireEvent>& events, PeriodGranularity granularity) {
    std::map<PeriodKey, std::vector<FireEvent>> buckets;
    for (const auto& e : events) {
        PeriodKey key{e.acq_date.year,
                      granularity == PeriodGranularity::Month ? e.acq_date.month : 0};
        buckets[key].push_back(e);
    }
    return buckets;
}

// ---------------------------------------------------------------------------

double ScalerParams::transform(double v, std::size_t col) const {
    if (std::isnan(v)) return v;
    if (kind == ScalerKind::MinMax) {
        double range = stat_b[col] - stat_a[col];
        if (range == 0.0) return 0.0; // constant column, by decision
        return (v - stat_a[col]) / range;
    }
    if (stat_b[col] == 0.0) return 0.0;
    return (v - stat_a[col]) / stat_b[col];
}

double ScalerParams::inverse(double v, std::size_t col) const {
    if (std::isnan(v)) return v;
    if (kind == ScalerKind::MinMax) return v * (stat_b[col] - stat_a[col]) + stat_a[col];
    return v * stat_b[col] + stat_a[col];
}

ScalerParams fit_scaler(const FeatureMatrix& m, ScalerKind kind) {
    if (m.rows() == 0) throw ValidationError("fit_scaler: empty matrix");
    const std::size_t cols = m.cols();
    ScalerParams p;
    p.kind = kind;
    p.stat_a.resize(cols);
    p.stat_b.resize(cols);

    for (std::size_t c = 0; c < cols; ++c) {
        if (kind == ScalerKind::MinMax) {
            double lo = std::numeric_limits<double>::infinity();
            double hi = -std::numeric_limits<double>::infinity();
            std::size_t n = 0;
            for (std::size_t r = 0; r < m.rows(); ++r) {
                double v = m.feature(r, c);
                if (std::isnan(v)) continue;
                lo = std::min(lo, v);
                hi = std::max(hi, v);
                ++n;
            }
            if (n == 0) {
                lo = hi = 0.0;
            }
            p.stat_a[c] = lo;
            p.stat_b[c] = hi;
        } else {
            // Two-pass mean/stddev (population) over valid entries.
            double sum = 0.0;
            std::size_t n = 0;
            for (std::size_t r = 0; r < m.rows(); ++r) {
                double v = m.feature(r, c);
                if (std::isnan(v)) continue;
                sum += v;
                ++n;
            }
            double mean = n ? sum / double(n) : 0.0;
            double ss = 0.0;
            for (std::size_t r = 0; r < m.rows(); ++r) {
                double v = m.feature(r, c);
                if (std::isnan(v)) continue;
                double d = v - mean;
                ss += d * d;
            }
            p.stat_a[c] = mean;
            p.stat_b[c] = n ? std::sqrt(ss / double(n)) : 0.0;
        }
    }
    return p;
}

namespace {

FeatureMatrix map_columns(const FeatureMatrix& m, const ScalerParams& p, bool inverse) {
    if (m.cols() != p.cols())
        throw ValidationError("scaler has " + std::to_string(p.cols()) +
                              " columns, matrix has " + std::to_string(m.cols()));
    FeatureMatrix out = m;
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) {
            double v = m.feature(r, c);
            out.set_feature(r, c, inverse ? p.inverse(v, c) : p.transform(v, c));
        }
    return out;
}

} // namespace

FeatureMatrix apply_scaler(const FeatureMatrix& m, const ScalerParams& params) {
    return map_columns(m, params, false);
}

FeatureMatrix inverse_scaler(const FeatureMatrix& m, const ScalerParams& params) {
    return map_columns(m, params, true);
}

void save_scaler(const ScalerParams& params, const std::filesystem::path& path) {
    std::string out = "fireseverity-scaler v1\n";
    out += std::string("kind ") + (params.kind == ScalerKind::MinMax ? "minmax" : "zscore") + "\n";
    out += "columns " + std::to_string(params.cols()) + "\n";
    for (std::size_t c = 0; c < params.cols(); ++c)
        out += format_double(params.stat_a[c]) + " " + format_double(params.stat_b[c]) + "\n";
    write_text_file(path, out);
}

ScalerParams load_scaler(const std::filesystem::path& path) {
    auto lines = read_lines(path);
    if (lines.empty() || lines[0] != "fireseverity-scaler v1")
        throw InputError(path.string() + ": not a v1 scaler file");
    ScalerParams p;
    std::size_t cols = 0;
    std::size_t line = 1;
    for (; line < lines.size(); ++line) {
        auto tokens = split_ws(lines[line]);
        if (tokens.empty()) continue;
        if (tokens[0] == "kind" && tokens.size() == 2) {
            if (tokens[1] == "minmax")
                p.kind = ScalerKind::MinMax;
            else if (tokens[1] == "zscore")
                p.kind = ScalerKind::ZScore;
            else
                throw InputError(path.string() + ": unknown scaler kind '" + tokens[1] + "'");
        } else if (tokens[0] == "columns" && tokens.size() == 2) {
            auto n = parse_int(tokens[1]);
            if (!n || *n < 0) throw InputError(path.string() + ": bad column count");
            cols = std::size_t(*n);
            ++line;
            break;
        } else {
            throw InputError(path.string() + ": unexpected line " + std::to_string(line + 1));
        }
    }
    for (std::size_t c = 0; c < cols; ++c, ++line) {
        if (line >= lines.size()) throw InputError(path.string() + ": truncated scaler file");
        auto tokens = split_ws(lines[line]);
        if (tokens.size() != 2) throw InputError(path.string() + ": bad stats line " +
                                                 std::to_string(line + 1));
        auto a = parse_double(tokens[0]);
        auto b = parse_double(tokens[1]);
        if (!a || !b) throw InputError(path.string() + ": bad stats line " +
                                       std::to_string(line + 1));
        p.stat_a.push_back(*a);
        p.stat_b.push_back(*b);
    }
    return p;
}

FeatureMatrix impute_missing(const FeatureMatrix& m, ImputeStrategy strategy) {
    const std::size_t cols = m.cols();

    std::vector<double> col_mean(cols, 0.0);
    if (strategy == ImputeStrategy::ColumnMean) {
        for (std::size_t c = 0; c < cols; ++c) {
            double sum = 0.0;
            std::size_t n = 0;
            for (std::size_t r = 0; r < m.rows(); ++r) {
                double v = m.feature(r, c);
                if (std::isnan(v)) continue;
                sum += v;
                ++n;
            }
            col_mean[c] = n ? sum / double(n) : 0.0;
        }
    }

    FeatureMatrix out;
    out.feature_names = m.feature_names;
    out.target_name = m.target_name;
    for (std::size_t r = 0; r < m.rows(); ++r) {
        if (std::isnan(m.target[r])) continue;
        bool keep = true;
        if (strategy == ImputeStrategy::DropRow) {
            for (std::size_t c = 0; c < cols && keep; ++c)
                if (std::isnan(m.feature(r, c))) keep = false;
        }
        if (!keep) continue;
        out.refs.push_back(m.refs[r]);
        for (std::size_t c = 0; c < cols; ++c) {
            double v = m.feature(r, c);
            if (std::isnan(v)) v = col_mean[c];
            out.features.push_back(v);
        }
        out.target.push_back(m.target[r]);
    }
    if (out.rows() == 0)
        throw EmptyResultError("impute_missing: every row was dropped");
    return out;
}

} // namespace fireseverity
