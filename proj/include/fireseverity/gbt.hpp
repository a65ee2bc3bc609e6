#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace fireseverity {

struct GbtConfig {
    int n_estimators = 500;
    double learning_rate = 0.1;
    int max_depth = 5;
    double subsample = 0.8;  // per-round row fraction, without replacement
    double colsample = 0.8;  // per-tree feature fraction, without replacement
    int min_samples_leaf = 1;
    double lambda_l2 = 1.0;
    std::uint64_t seed = 0;

    void validate() const;
};

// Internal node when feature >= 0, leaf otherwise. Split sends
// value < threshold left, >= threshold right.
struct TreeNode {
    int feature = -1;
    double threshold = 0.0;
    std::int32_t left = -1;
    std::int32_t right = -1;
    double weight = 0.0;

    bool is_leaf() const { return feature < 0; }
};

struct Tree {
    std::vector<TreeNode> nodes;

    double predict_row(const double* x) const {
        std::int32_t i = 0;
        while (!nodes[std::size_t(i)].is_leaf())
            i = x[nodes[std::size_t(i)].feature] < nodes[std::size_t(i)].threshold
                    ? nodes[std::size_t(i)].left
                    : nodes[std::size_t(i)].right;
        return nodes[std::size_t(i)].weight;
    }
};

// prediction = base_score + learning_rate * sum of tree outputs.
struct GbtModel {
    GbtConfig config;
    double base_score = 0.0;
    std::size_t feature_count = 0;
    std::vector<std::string> feature_names;
    std::vector<Tree> trees;
    std::vector<double> gain_by_feature;         // cumulative accepted split gain
    std::vector<std::int64_t> splits_by_feature; // accepted split counts

    double predict_row(const double* x) const;
    bool feature_ever_split(std::size_t f) const { return splits_by_feature[f] > 0; }
};

struct TrainInfo {
    std::vector<double> round_train_mse; // over all training rows, per round
};

// Squared-error gradient boosting with exact greedy split search. Residuals
// are refit each round on a seeded row subsample and per-tree feature sample;
// leaf weight is sum(residuals) / (count + lambda_l2). Deterministic for a
// given (data, config, seed).
GbtModel train_gbt(std::span<const double> X, std::size_t n_rows, std::size_t n_cols,
                   std::span<const double> y, const GbtConfig& config,
                   std::vector<std::string> feature_names = {},
                   TrainInfo* info = nullptr);

std::vector<double> predict(const GbtModel& model, std::span<const double> X,
                            std::size_t n_rows);

double mse(std::span<const double> y, std::span<const double> y_hat);
double r2(std::span<const double> y, std::span<const double> y_hat);

struct Metrics {
    double mse = 0.0;
    double r2 = 0.0;
    std::vector<double> fold_r2;
    double mean_fold_r2 = 0.0;
};

struct SplitIndices {
    std::vector<std::uint32_t> train;
    std::vector<std::uint32_t> test;
};

// Seeded uniform shuffle, then a disjoint exhaustive train/test split.
SplitIndices train_test_split(std::size_t n_rows, double train_fraction,
                              std::uint64_t seed);

// Seeded shuffle into k near-equal folds; returns the held-out R2 per fold.
std::vector<double> kfold_cv(std::span<const double> X, std::size_t n_rows,
                             std::size_t n_cols, std::span<const double> y,
                             const GbtConfig& config, int k, std::uint64_t seed);

enum class ImportanceKind { Gain, Frequency };

// Normalized to sum 1; the all-zero vector when the model has no splits.
std::vector<double> feature_importance(const GbtModel& model, ImportanceKind kind);

std::string serialize_model(const GbtModel& model);
GbtModel deserialize_model(const std::string& text);
void save_model(const GbtModel& model, const std::filesystem::path& path);
GbtModel load_model(const std::filesystem::path& path);

// Pinned PRNG helpers (mt19937_64 + rejection sampling); the sampling
// algorithm is part of the model file version.
std::uint64_t bounded_rand(std::mt19937_64& rng, std::uint64_t n);
std::vector<std::uint32_t> sample_without_replacement(std::mt19937_64& rng,
                                                      std::uint32_t n, std::uint32_t k);
void shuffle_indices(std::mt19937_64& rng, std::vector<std::uint32_t>& idx);

} // namespace fireseverity
