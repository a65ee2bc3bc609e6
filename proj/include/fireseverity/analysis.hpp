#pragma once

#include "fireseverity/gbt.hpp"
#include "fireseverity/matrix.hpp"
#include "fireseverity/preprocess.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace fireseverity {

struct ResidualSummary {
    std::size_t count = 0;
    double mean = 0.0;
    double stddev = 0.0; // population
    double skew = 0.0;   // 0 when stddev is 0
    double min = 0.0;
    double max = 0.0;
    std::vector<std::size_t> bin_counts; // equal-width bins over [min, max]
    std::vector<double> bin_edges;       // bin_counts.size() + 1 edges
};

ResidualSummary residual_summary(std::span<const double> y, std::span<const double> y_hat,
                                 std::size_t bin_count);

void write_residual_summary_csv(const ResidualSummary& s,
                                const std::filesystem::path& moments_path,
                                const std::filesystem::path& histogram_path);

struct CorrelationResult {
    std::size_t n = 0;
    std::vector<double> matrix;       // n x n, row-major
    std::vector<std::string> names;
    std::vector<std::size_t> constant_columns; // flagged, reported as r = 0

    double at(std::size_t i, std::size_t j) const { return matrix[i * n + j]; }
};

// Pearson r per column pair over the given columns (row-major, n_rows x
// n_cols). Constant columns get 1 on the diagonal, 0 elsewhere, and a flag.
CorrelationResult correlation_matrix(std::span<const double> columns, std::size_t n_rows,
                                     std::size_t n_cols,
                                     const std::vector<std::string>& names);

void write_correlation_csv(const CorrelationResult& corr,
                           const std::filesystem::path& matrix_path,
                           const std::filesystem::path& flags_path);

void actual_vs_predicted_export(std::span<const double> y, std::span<const double> y_hat,
                                const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// Sensitivity scenarios
// ---------------------------------------------------------------------------

struct Scenario {
    std::string name;
    std::vector<std::string> perturbed_features;
    double shift_fraction = 0.0; // 0 baseline, +-0.10 moderate, +-0.30 significant
    std::string horizon_label;   // optional, e.g. "10y"
};

std::vector<Scenario> load_scenarios(const std::filesystem::path& path);
void save_scenarios(const std::vector<Scenario>& scenarios,
                    const std::filesystem::path& path);

struct DistributionStats {
    double mean = 0.0;
    double stddev = 0.0;
    double min = 0.0, q25 = 0.0, median = 0.0, q75 = 0.0, max = 0.0;
};

struct ScenarioSummary {
    Scenario scenario;
    DistributionStats predictions;
    DistributionStats deltas; // vs the unperturbed baseline
};

// Perturbs raw feature columns by x(1 + shift), re-standardizes with the
// frozen training scaler, predicts, and summarizes. The first summary row is
// always the implicit zero-shift baseline.
std::vector<ScenarioSummary> sensitivity_scan(const GbtModel& model,
                                              const FeatureMatrix& raw,
                                              const ScalerParams& scaler,
                                              const std::vector<Scenario>& scenarios);

void write_sensitivity_csv(const std::vector<ScenarioSummary>& summaries,
                           const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// Resource-allocation priority
// ---------------------------------------------------------------------------

enum class Severity { Low, Moderate, High, VeryHigh };
enum class Priority { Moderate, High, VeryHigh };

std::string_view to_string(Severity s);
std::string_view to_string(Priority p);
std::optional<Severity> parse_severity(std::string_view s);
std::optional<Priority> parse_priority(std::string_view s);

struct PriorityRecord {
    std::string region;
    double population_density = 0.0; // people/km^2
    double vegetation_cover = 0.0;   // percent
    Severity historical_severity = Severity::Low;
    Severity predicted_severity = Severity::Low;
    Priority priority = Priority::Moderate; // output

    void validate() const;
};

// Weighted bucket score mapped through two cut points. All weights are
// non-negative and bucket edges ascending, so the ranking is monotone in
// every input.
struct PriorityConfig {
    double w_pop = 0.0, w_veg = 0.0, w_hist = 0.0, w_pred = 0.0;
    std::vector<double> pop_edges; // ascending; bucket = #edges <= value
    std::vector<double> veg_edges;
    double cut_high = 0.0;      // score >= cut_high     -> High
    double cut_veryhigh = 0.0;  // score >= cut_veryhigh -> VeryHigh

    void validate() const;
    double score(const PriorityRecord& r) const;
    Priority classify(double score) const;
};

PriorityConfig default_priority_config();
PriorityConfig load_priority_config(const std::filesystem::path& path);
void save_priority_config(const PriorityConfig& config, const std::filesystem::path& path);

std::vector<PriorityRecord> rank_priority(std::vector<PriorityRecord> records,
                                          const PriorityConfig& config);

// CSV: region,population_density,vegetation_cover,historical_severity,
// predicted_severity[,priority]. The priority column is optional on read.
std::vector<PriorityRecord> read_priority_records_csv(const std::filesystem::path& path,
                                                      bool* has_priority_column = nullptr);
void write_priority_records_csv(const std::vector<PriorityRecord>& records,
                                const std::filesystem::path& path);

} // namespace fireseverity
