#include "fireseverity/config.hpp"

#include "fireseverity/errors.hpp"
#include "fireseverity/textio.hpp"

#include <algorithm>

namespace fireseverity {

namespace {

struct KvLine {
    std::string section;
    std::string key;
    std::string value;
    std::size_t line_no;
};

std::vector<KvLine> parse_kv(const std::filesystem::path& path) {
    auto lines = read_lines(path);
    if (lines.empty() || trim(lines[0]) != "fireseverity-config v1")
        throw ConfigError(path.string() + ": first line must be 'fireseverity-config v1'");
    std::vector<KvLine> out;
    std::string section;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        std::string line = lines[i];
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        std::string t = trim(line);
        if (t.empty()) continue;
        if (t.front() == '[' && t.back() == ']') {
            section = trim(t.substr(1, t.size() - 2));
            continue;
        }
        auto eq = t.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path.string() + ":" + std::to_string(i + 1) +
                              ": expected 'key = value'");
        out.push_back({section, trim(t.substr(0, eq)), trim(t.substr(eq + 1)), i + 1});
    }
    return out;
}

} // namespace

void PipelineConfig::validate() const {
    for (int y : fire_years)
        if (y < 2012 || y > 2023)
            throw ConfigError("fire year " + std::to_string(y) +
                              " outside supported range 2012..2023");
    if (!(pixel_size_m > 0.0)) throw ConfigError("grid pixel_size must be positive");
    if (!(min_confidence >= 0.0 && min_confidence <= 100.0))
        throw ConfigError("fsi min_confidence must be within [0, 100]");
    try {
        model.validate();
        fsi_params.validate();
    } catch (const ValidationError& e) {
        throw ConfigError(e.what());
    }
}

PipelineConfig load_pipeline_config(const std::filesystem::path& path) {
    PipelineConfig cfg;
    cfg.base_dir = path.has_parent_path() ? path.parent_path() : ".";

    auto resolve = [&](const std::string& v) -> std::filesystem::path {
        std::filesystem::path p(v);
        return p.is_absolute() ? p : cfg.base_dir / p;
    };
    auto to_num = [&](const KvLine& kv) -> double {
        auto v = parse_double(kv.value);
        if (!v)
            throw ConfigError(path.string() + ":" + std::to_string(kv.line_no) +
                              ": '" + kv.value + "' is not a number");
        return *v;
    };
    auto to_int = [&](const KvLine& kv) -> long long {
        auto v = parse_int(kv.value);
        if (!v)
            throw ConfigError(path.string() + ":" + std::to_string(kv.line_no) +
                              ": '" + kv.value + "' is not an integer");
        return *v;
    };
    auto path_list = [&](const std::string& v) {
        std::vector<std::filesystem::path> out;
        for (const auto& part : split(v, ';'))
            if (!trim(part).empty()) out.push_back(resolve(trim(part)));
        return out;
    };

    for (const auto& kv : parse_kv(path)) {
        auto fail = [&](const std::string& msg) -> void {
            throw ConfigError(path.string() + ":" + std::to_string(kv.line_no) + ": " + msg);
        };
        if (kv.section == "inputs") {
            if (kv.key == "firms_csv") cfg.firms_csv = resolve(kv.value);
            else if (kv.key == "dem") cfg.dem = resolve(kv.value);
            else if (kv.key == "mean_temperature") cfg.mean_temperature = resolve(kv.value);
            else if (kv.key == "total_precipitation") cfg.total_precipitation = resolve(kv.value);
            else if (kv.key == "smi") cfg.smi = resolve(kv.value);
            else if (kv.key.starts_with("landsat.")) {
                auto rest = kv.key.substr(8);
                bool pre = rest.ends_with(".pre");
                bool post = rest.ends_with(".post");
                std::string year_str = pre ? rest.substr(0, rest.size() - 4)
                                     : post ? rest.substr(0, rest.size() - 5)
                                            : rest;
                auto year = parse_int(year_str);
                if (!year) fail("bad landsat key '" + kv.key + "'");
                if (pre)
                    cfg.pre_scenes_by_year[int(*year)] = path_list(kv.value);
                else if (post)
                    cfg.post_scenes_by_year[int(*year)] = path_list(kv.value);
                else
                    cfg.landsat_by_year[int(*year)] = resolve(kv.value);
            } else {
                fail("unknown inputs key '" + kv.key + "'");
            }
        } else if (kv.section == "grid") {
            if (kv.key == "pixel_size") cfg.pixel_size_m = to_num(kv);
            else fail("unknown grid key '" + kv.key + "'");
        } else if (kv.section == "years") {
            if (kv.key == "fire_years") {
                for (const auto& tok : split_ws(kv.value)) {
                    auto y = parse_int(tok);
                    if (!y) fail("bad year '" + tok + "'");
                    cfg.fire_years.push_back(int(*y));
                }
            } else {
                fail("unknown years key '" + kv.key + "'");
            }
        } else if (kv.section == "model") {
            if (kv.key == "n_estimators") cfg.model.n_estimators = int(to_int(kv));
            else if (kv.key == "learning_rate") cfg.model.learning_rate = to_num(kv);
            else if (kv.key == "max_depth") cfg.model.max_depth = int(to_int(kv));
            else if (kv.key == "subsample") cfg.model.subsample = to_num(kv);
            else if (kv.key == "colsample") cfg.model.colsample = to_num(kv);
            else if (kv.key == "min_samples_leaf") cfg.model.min_samples_leaf = int(to_int(kv));
            else if (kv.key == "lambda_l2") cfg.model.lambda_l2 = to_num(kv);
            else if (kv.key == "seed") cfg.model.seed = std::uint64_t(to_int(kv));
            else fail("unknown model key '" + kv.key + "'");
        } else if (kv.section == "fsi") {
            if (kv.key == "area") {
                if (kv.value == "scan_track") cfg.fsi_params.area = FsiParams::Area::ScanTrack;
                else if (kv.value.starts_with("fixed:")) {
                    auto v = parse_double(kv.value.substr(6));
                    if (!v || !(*v > 0)) fail("bad fixed area '" + kv.value + "'");
                    cfg.fsi_params.area = FsiParams::Area::FixedKm2;
                    cfg.fsi_params.fixed_area_km2 = *v;
                } else fail("area must be 'scan_track' or 'fixed:<km2>'");
            } else if (kv.key == "intensity") {
                if (kv.value == "frp") cfg.fsi_params.intensity = FsiParams::Intensity::Frp;
                else if (kv.value == "brightness")
                    cfg.fsi_params.intensity = FsiParams::Intensity::Brightness;
                else fail("intensity must be 'frp' or 'brightness'");
            } else if (kv.key == "duration_days") {
                cfg.fsi_params.duration_days = to_num(kv);
            } else if (kv.key == "min_confidence") {
                cfg.min_confidence = to_num(kv);
            } else {
                fail("unknown fsi key '" + kv.key + "'");
            }
        } else if (kv.section == "indices") {
            if (kv.key == "composite") {
                if (kv.value == "median") cfg.composite_statistic = CompositeStatistic::Median;
                else if (kv.value == "mean") cfg.composite_statistic = CompositeStatistic::Mean;
                else fail("composite must be 'median' or 'mean'");
            } else {
                fail("unknown indices key '" + kv.key + "'");
            }
        } else if (kv.section == "analysis") {
            if (kv.key == "scenarios") cfg.scenario_file = resolve(kv.value);
            else if (kv.key == "priority_config") cfg.priority_config_file = resolve(kv.value);
            else if (kv.key == "priority_records") cfg.priority_records_file = resolve(kv.value);
            else fail("unknown analysis key '" + kv.key + "'");
        } else if (kv.section == "output") {
            if (kv.key == "dir") cfg.output_dir = resolve(kv.value);
            else fail("unknown output key '" + kv.key + "'");
        } else {
            fail("unknown section '" + kv.section + "'");
        }
    }

    std::sort(cfg.fire_years.begin(), cfg.fire_years.end());
    cfg.validate();
    return cfg;
}

} // namespace fireseverity
