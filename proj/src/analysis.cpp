#include "fireseverity/analysis.hpp"

#include "fireseverity/errors.hpp"
#include "fireseverity/parallel.hpp"
#include "fireseverity/textio.hpp"

#include <algorithm>
#include <cmath>

namespace fireseverity {

ResidualSummary residual_summary(std::span<const double> y, std::span<const double> y_hat,
                                 std::size_t bin_count) {
    if (y.size() != y_hat.size()) throw ValidationError("residual_summary: length mismatch");
    if (y.empty()) throw ValidationError("residual_summary: empty input");
    if (bin_count < 1) throw ValidationError("residual_summary: bin_count must be >= 1");

    std::vector<double> r(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) r[i] = y[i] - y_hat[i];

    ResidualSummary s;
    s.count = r.size();
    double sum = 0.0;
    for (double v : r) sum += v;
    s.mean = sum / double(r.size());
    double m2 = 0.0, m3 = 0.0;
    for (double v : r) {
        double d = v - s.mean;
        m2 += d * d;
        m3 += d * d * d;
    }
    m2 /= double(r.size());
    m3 /= double(r.size());
    s.stddev = std::sqrt(m2);
    s.skew = s.stddev > 0.0 ? m3 / (s.stddev * s.stddev * s.stddev) : 0.0;
    s.min = *std::min_element(r.begin(), r.end());
    s.max = *std::max_element(r.begin(), r.end());

    s.bin_counts.assign(bin_count, 0);
    s.bin_edges.resize(bin_count + 1);
    double width = (s.max - s.min) / double(bin_count);
    for (std::size_t b = 0; b <= bin_count; ++b) s.bin_edges[b] = s.min + width * double(b);
    s.bin_edges[bin_count] = s.max;
    for (double v : r) {
        std::size_t b = 0;
        if (width > 0.0) {
            b = std::size_t((v - s.min) / width);
            if (b >= bin_count) b = bin_count - 1; // right edge closes the last bin
        }
        s.bin_counts[b] += 1;
    }
    return s;
}

void write_residual_summary_csv(const ResidualSummary& s,
                                const std::filesystem::path& moments_path,
                                const std::filesystem::path& histogram_path) {
    std::string m = "metric,value\n";
    m += "count," + std::to_string(s.count) + "\n";
    m += "mean," + format_double(s.mean) + "\n";
    m += "stddev," + format_double(s.stddev) + "\n";
    m += "skew," + format_double(s.skew) + "\n";
    m += "min," + format_double(s.min) + "\n";
    m += "max," + format_double(s.max) + "\n";
    write_text_file(moments_path, m);

    std::string h = "bin_start,bin_end,count\n";
    for (std::size_t b = 0; b < s.bin_counts.size(); ++b)
        h += csv_join({format_double(s.bin_edges[b]), format_double(s.bin_edges[b + 1]),
                       std::to_string(s.bin_counts[b])});
    write_text_file(histogram_path, h);
}

CorrelationResult correlation_matrix(std::span<const double> columns, std::size_t n_rows,
                                     std::size_t n_cols,
                                     const std::vector<std::string>& names) {
    if (n_rows < 2) throw ValidationError("correlation_matrix: need at least 2 rows");
    if (columns.size() != n_rows * n_cols)
        throw ValidationError("correlation_matrix: shape mismatch");
    if (!names.empty() && names.size() != n_cols)
        throw ValidationError("correlation_matrix: name count mismatch");

    CorrelationResult out;
    out.n = n_cols;
    out.names = names;
    if (out.names.empty())
        for (std::size_t c = 0; c < n_cols; ++c) out.names.push_back("c" + std::to_string(c));
    out.matrix.assign(n_cols * n_cols, 0.0);

    std::vector<double> mean(n_cols, 0.0), sd(n_cols, 0.0);
    for (std::size_t c = 0; c < n_cols; ++c) {
        double sum = 0.0;
        for (std::size_t r = 0; r < n_rows; ++r) sum += columns[r * n_cols + c];
        mean[c] = sum / double(n_rows);
        double ss = 0.0;
        for (std::size_t r = 0; r < n_rows; ++r) {
            double d = columns[r * n_cols + c] - mean[c];
            ss += d * d;
        }
        sd[c] = std::sqrt(ss);
        if (sd[c] == 0.0) out.constant_columns.push_back(c);
    }

#pragma omp parallel for schedule(dynamic) num_threads(thread_count())
    for (std::int64_t i = 0; i < std::int64_t(n_cols); ++i) {
        out.matrix[std::size_t(i) * n_cols + std::size_t(i)] = 1.0;
        for (std::size_t j = std::size_t(i) + 1; j < n_cols; ++j) {
            double r = 0.0;
            if (sd[std::size_t(i)] > 0.0 && sd[j] > 0.0) {
                double cov = 0.0;
                for (std::size_t row = 0; row < n_rows; ++row)
                    cov += (columns[row * n_cols + std::size_t(i)] - mean[std::size_t(i)]) *
                           (columns[row * n_cols + j] - mean[j]);
                r = cov / (sd[std::size_t(i)] * sd[j]);
            }
            out.matrix[std::size_t(i) * n_cols + j] = r;
            out.matrix[j * n_cols + std::size_t(i)] = r;
        }
    }
    return out;
}

void write_correlation_csv(const CorrelationResult& corr,
                           const std::filesystem::path& matrix_path,
                           const std::filesystem::path& flags_path) {
    std::string out = "band";
    for (const auto& n : corr.names) out += "," + n;
    out += "\n";
    for (std::size_t i = 0; i < corr.n; ++i) {
        out += corr.names[i];
        for (std::size_t j = 0; j < corr.n; ++j) out += "," + format_double(corr.at(i, j));
        out += "\n";
    }
    write_text_file(matrix_path, out);

    std::string flags = "constant_column\n";
    for (std::size_t c : corr.constant_columns) flags += corr.names[c] + "\n";
    write_text_file(flags_path, flags);
}

void actual_vs_predicted_export(std::span<const double> y, std::span<const double> y_hat,
                                const std::filesystem::path& path) {
    if (y.size() != y_hat.size())
        throw ValidationError("actual_vs_predicted_export: length mismatch");
    std::string out = "actual,predicted\n";
    for (std::size_t i = 0; i < y.size(); ++i)
        out += csv_join({format_double(y[i]), format_double(y_hat[i])});
    write_text_file(path, out);
}

// ---------------------------------------------------------------------------
// Scenarios
// ---------------------------------------------------------------------------

std::vector<Scenario> load_scenarios(const std::filesystem::path& path) {
    auto lines = read_lines(path);
    if (lines.empty() || lines[0] != "fireseverity-scenarios v1")
        throw InputError(path.string() + ": not a v1 scenario file");
    std::vector<Scenario> out;
    Scenario cur;
    bool open = false;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        auto toks = split_ws(lines[i]);
        if (toks.empty() || toks[0].starts_with('#')) continue;
        const std::string& key = toks[0];
        auto fail = [&](const std::string& msg) -> void {
            throw InputError(path.string() + ":" + std::to_string(i + 1) + ": " + msg);
        };
        if (key == "scenario") {
            if (open) fail("previous scenario not closed with 'end'");
            if (toks.size() != 2) fail("scenario expects a name");
            cur = Scenario{};
            cur.name = toks[1];
            open = true;
        } else if (key == "features") {
            if (!open) fail("'features' outside a scenario");
            cur.perturbed_features.assign(toks.begin() + 1, toks.end());
        } else if (key == "shift") {
            if (!open || toks.size() != 2) fail("bad shift line");
            auto v = parse_double(toks[1]);
            if (!v) fail("bad shift value");
            cur.shift_fraction = *v;
        } else if (key == "horizon") {
            if (!open || toks.size() != 2) fail("bad horizon line");
            cur.horizon_label = toks[1];
        } else if (key == "end") {
            if (!open) fail("'end' without a scenario");
            if (!(std::abs(cur.shift_fraction) < 1.0)) fail("|shift| must be < 1");
            out.push_back(cur);
            open = false;
        } else {
            fail("unknown key '" + key + "'");
        }
    }
    if (open) throw InputError(path.string() + ": unterminated scenario");
    return out;
}

void save_scenarios(const std::vector<Scenario>& scenarios,
                    const std::filesystem::path& path) {
    std::string out = "fireseverity-scenarios v1\n";
    for (const auto& s : scenarios) {
        out += "scenario " + s.name + "\n";
        out += "features";
        for (const auto& f : s.perturbed_features) out += " " + f;
        out += "\n";
        out += "shift " + format_double(s.shift_fraction) + "\n";
        if (!s.horizon_label.empty()) out += "horizon " + s.horizon_label + "\n";
        out += "end\n";
    }
    write_text_file(path, out);
}

namespace {

DistributionStats summarize(std::vector<double> v) {
    DistributionStats s;
    if (v.empty()) return s;
    double sum = 0.0;
    for (double x : v) sum += x;
    s.mean = sum / double(v.size());
    double ss = 0.0;
    for (double x : v) {
        double d = x - s.mean;
        ss += d * d;
    }
    s.stddev = std::sqrt(ss / double(v.size()));
    std::sort(v.begin(), v.end());
    auto quantile = [&](double q) {
        double pos = q * double(v.size() - 1);
        std::size_t lo = std::size_t(pos);
        std::size_t hi = std::min(lo + 1, v.size() - 1);
        double t = pos - double(lo);
        return v[lo] + t * (v[hi] - v[lo]);
    };
    s.min = v.front();
    s.q25 = quantile(0.25);
    s.median = quantile(0.5);
    s.q75 = quantile(0.75);
    s.max = v.back();
    return s;
}

} // namespace

std::vector<ScenarioSummary> sensitivity_scan(const GbtModel& model,
                                              const FeatureMatrix& raw,
                                              const ScalerParams& scaler,
                                              const std::vector<Scenario>& scenarios) {
    if (raw.cols() != model.feature_count)
        throw ValidationError("sensitivity_scan: matrix columns disagree with model");
    for (const auto& sc : scenarios) {
        if (!(std::abs(sc.shift_fraction) < 1.0))
            throw ValidationError("scenario '" + sc.name + "': |shift| must be < 1");
        for (const auto& f : sc.perturbed_features)
            if (raw.column_index(f) < 0)
                throw ValidationError("scenario '" + sc.name + "': unknown feature '" + f + "'");
    }

    auto standardized_predictions = [&](const FeatureMatrix& m) {
        FeatureMatrix std_m = apply_scaler(m, scaler);
        return predict(model, std_m.features, std_m.rows());
    };

    std::vector<double> baseline = standardized_predictions(raw);

    std::vector<ScenarioSummary> out;
    Scenario base;
    base.name = "baseline";
    ScenarioSummary base_summary;
    base_summary.scenario = base;
    base_summary.predictions = summarize(baseline);
    base_summary.deltas = summarize(std::vector<double>(baseline.size(), 0.0));
    out.push_back(std::move(base_summary));

    for (const auto& sc : scenarios) {
        FeatureMatrix perturbed = raw;
        for (const auto& fname : sc.perturbed_features) {
            std::size_t c = std::size_t(raw.column_index(fname));
            const double factor = 1.0 + sc.shift_fraction;
            for (std::size_t r = 0; r < perturbed.rows(); ++r)
                perturbed.set_feature(r, c, perturbed.feature(r, c) * factor);
        }
        std::vector<double> preds = standardized_predictions(perturbed);
        std::vector<double> deltas(preds.size());
        for (std::size_t i = 0; i < preds.size(); ++i) deltas[i] = preds[i] - baseline[i];

        ScenarioSummary summary;
        summary.scenario = sc;
        summary.predictions = summarize(std::move(preds));
        summary.deltas = summarize(std::move(deltas));
        out.push_back(std::move(summary));
    }
    return out;
}

void write_sensitivity_csv(const std::vector<ScenarioSummary>& summaries,
                           const std::filesystem::path& path) {
    std::string out =
        "scenario,horizon,shift,features,pred_mean,pred_stddev,pred_min,pred_q25,"
        "pred_median,pred_q75,pred_max,delta_mean,delta_stddev,delta_min,delta_q25,"
        "delta_median,delta_q75,delta_max\n";
    for (const auto& s : summaries) {
        std::string feats;
        for (std::size_t i = 0; i < s.scenario.perturbed_features.size(); ++i) {
            if (i > 0) feats += ';';
            feats += s.scenario.perturbed_features[i];
        }
        out += csv_join(
            {s.scenario.name, s.scenario.horizon_label, format_double(s.scenario.shift_fraction),
             feats, format_double(s.predictions.mean), format_double(s.predictions.stddev),
             format_double(s.predictions.min), format_double(s.predictions.q25),
             format_double(s.predictions.median), format_double(s.predictions.q75),
             format_double(s.predictions.max), format_double(s.deltas.mean),
             format_double(s.deltas.stddev), format_double(s.deltas.min),
             format_double(s.deltas.q25), format_double(s.deltas.median),
             format_double(s.deltas.q75), format_double(s.deltas.max)});
    }
    write_text_file(path, out);
}

// ---------------------------------------------------------------------------
// Priority ranking
// ---------------------------------------------------------------------------

std::string_view to_string(Severity s) {
    switch (s) {
        case Severity::Low: return "Low";
        case Severity::Moderate: return "Moderate";
        case Severity::High: return "High";
        case Severity::VeryHigh: return "Very High";
    }
    return "";
}

std::string_view to_string(Priority p) {
    switch (p) {
        case Priority::Moderate: return "Moderate";
        case Priority::High: return "High";
        case Priority::VeryHigh: return "Very High";
    }
    return "";
}

std::optional<Severity> parse_severity(std::string_view s) {
    if (s == "Low" || s == "low") return Severity::Low;
    if (s == "Moderate" || s == "moderate") return Severity::Moderate;
    if (s == "High" || s == "high") return Severity::High;
    if (s == "Very High" || s == "VeryHigh" || s == "very_high") return Severity::VeryHigh;
    return std::nullopt;
}

std::optional<Priority> parse_priority(std::string_view s) {
    if (s == "Moderate" || s == "moderate") return Priority::Moderate;
    if (s == "High" || s == "high") return Priority::High;
    if (s == "Very High" || s == "VeryHigh" || s == "very_high") return Priority::VeryHigh;
    return std::nullopt;
}

void PriorityRecord::validate() const {
    if (!(population_density >= 0.0))
        throw ValidationError("record '" + region + "': negative population density");
    if (!(vegetation_cover >= 0.0 && vegetation_cover <= 100.0))
        throw ValidationError("record '" + region + "': vegetation cover outside [0, 100]");
}

void PriorityConfig::validate() const {
    if (w_pop < 0 || w_veg < 0 || w_hist < 0 || w_pred < 0)
        throw ConfigError("priority config: weights must be non-negative");
    if (!std::is_sorted(pop_edges.begin(), pop_edges.end()) ||
        !std::is_sorted(veg_edges.begin(), veg_edges.end()))
        throw ConfigError("priority config: bucket edges must ascend");
    if (!(cut_high > 0.0) || !(cut_veryhigh >= cut_high))
        throw ConfigError("priority config: cuts must satisfy 0 < cut_high <= cut_veryhigh");
}

namespace {

double bucket(double v, const std::vector<double>& edges) {
    double b = 0.0;
    for (double e : edges)
        if (v >= e) b += 1.0;
    return b;
}

double ordinal(Severity s) { return double(int(s)); }

} // namespace

double PriorityConfig::score(const PriorityRecord& r) const {
    return w_pop * bucket(r.population_density, pop_edges) +
           w_veg * bucket(r.vegetation_cover, veg_edges) +
           w_hist * ordinal(r.historical_severity) + w_pred * ordinal(r.predicted_severity);
}

Priority PriorityConfig::classify(double s) const {
    if (s >= cut_veryhigh) return Priority::VeryHigh;
    if (s >= cut_high) return Priority::High;
    return Priority::Moderate;
}

PriorityConfig default_priority_config() {
    PriorityConfig c;
    c.w_pop = 1.0;
    c.w_veg = 2.2;
    c.w_hist = 0.5;
    c.w_pred = 3.0;
    c.pop_edges = {150.0, 300.0};
    c.veg_edges = {34.0};
    c.cut_high = 7.9;
    c.cut_veryhigh = 10.6;
    return c;
}

PriorityConfig load_priority_config(const std::filesystem::path& path) {
    auto lines = read_lines(path);
    if (lines.empty() || lines[0] != "fireseverity-priority v1")
        throw ConfigError(path.string() + ": not a v1 priority config");
    PriorityConfig c;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        auto toks = split_ws(lines[i]);
        if (toks.empty() || toks[0].starts_with('#')) continue;
        auto fail = [&](const std::string& msg) -> void {
            throw ConfigError(path.string() + ":" + std::to_string(i + 1) + ": " + msg);
        };
        auto one = [&]() -> double {
            if (toks.size() != 2) fail("expected one value");
            auto v = parse_double(toks[1]);
            if (!v) fail("bad number");
            return *v;
        };
        auto many = [&]() -> std::vector<double> {
            std::vector<double> out;
            for (std::size_t t = 1; t < toks.size(); ++t) {
                auto v = parse_double(toks[t]);
                if (!v) fail("bad number");
                out.push_back(*v);
            }
            return out;
        };
        const std::string& key = toks[0];
        if (key == "w_pop") c.w_pop = one();
        else if (key == "w_veg") c.w_veg = one();
        else if (key == "w_hist") c.w_hist = one();
        else if (key == "w_pred") c.w_pred = one();
        else if (key == "pop_edges") c.pop_edges = many();
        else if (key == "veg_edges") c.veg_edges = many();
        else if (key == "cut_high") c.cut_high = one();
        else if (key == "cut_veryhigh") c.cut_veryhigh = one();
        else fail("unknown key '" + key + "'");
    }
    c.validate();
    return c;
}

void save_priority_config(const PriorityConfig& config, const std::filesystem::path& path) {
    std::string out = "fireseverity-priority v1\n";
    out += "w_pop " + format_double(config.w_pop) + "\n";
    out += "w_veg " + format_double(config.w_veg) + "\n";
    out += "w_hist " + format_double(config.w_hist) + "\n";
    out += "w_pred " + format_double(config.w_pred) + "\n";
    out += "pop_edges";
    for (double e : config.pop_edges) out += " " + format_double(e);
    out += "\nveg_edges";
    for (double e : config.veg_edges) out += " " + format_double(e);
    out += "\ncut_high " + format_double(config.cut_high) + "\n";
    out += "cut_veryhigh " + format_double(config.cut_veryhigh) + "\n";
    write_text_file(path, out);
}

std::vector<PriorityRecord> rank_priority(std::vector<PriorityRecord> records,
                                          const PriorityConfig& config) {
    config.validate();
    for (auto& r : records) {
        r.validate();
        r.priority = config.classify(config.score(r));
    }
    return records;
}

std::vector<PriorityRecord> read_priority_records_csv(const std::filesystem::path& path,
                                                      bool* has_priority_column) {
    auto lines = read_lines(path);
    if (lines.empty()) throw InputError(path.string() + ": empty file");
    auto header = split(lines[0], ',');
    bool with_priority = header.size() >= 6;
    if (header.size() != 5 && header.size() != 6)
        throw InputError(path.string() + ": expected 5 or 6 columns");
    if (has_priority_column != nullptr) *has_priority_column = with_priority;

    std::vector<PriorityRecord> out;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (trim(lines[i]).empty()) continue;
        auto f = split(lines[i], ',');
        if (f.size() != header.size())
            throw InputError(path.string() + ":" + std::to_string(i + 1) + ": bad field count");
        PriorityRecord r;
        r.region = trim(f[0]);
        auto pop = parse_double(trim(f[1]));
        auto veg = parse_double(trim(f[2]));
        auto hist = parse_severity(trim(f[3]));
        auto pred = parse_severity(trim(f[4]));
        if (!pop || !veg || !hist || !pred)
            throw InputError(path.string() + ":" + std::to_string(i + 1) + ": unparsable record");
        r.population_density = *pop;
        r.vegetation_cover = *veg;
        r.historical_severity = *hist;
        r.predicted_severity = *pred;
        if (with_priority) {
            auto pr = parse_priority(trim(f[5]));
            if (!pr)
                throw InputError(path.string() + ":" + std::to_string(i + 1) + ": bad priority");
            r.priority = *pr;
        }
        r.validate();
        out.push_back(std::move(r));
    }
    return out;
}

void write_priority_records_csv(const std::vector<PriorityRecord>& records,
                                const std::filesystem::path& path) {
    std::string out =
        "region,population_density,vegetation_cover,historical_severity,"
        "predicted_severity,priority\n";
    for (const auto& r : records)
        out += csv_join({r.region, format_double(r.population_density),
                         format_double(r.vegetation_cover),
                         std::string(to_string(r.historical_severity)),
                         std::string(to_string(r.predicted_severity)),
                         std::string(to_string(r.priority))});
    write_text_file(path, out);
}

} // namespace fireseverity
