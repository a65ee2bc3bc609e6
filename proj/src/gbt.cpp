#include "fireseverity/gbt.hpp"

#include "fireseverity/errors.hpp"
#include "fireseverity/parallel.hpp"
#include "fireseverity/textio.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace fireseverity {

void GbtConfig::validate() const {
    if (n_estimators < 1) throw ValidationError("GbtConfig: n_estimators must be >= 1");
    if (!(learning_rate > 0.0 && learning_rate <= 1.0))
        throw ValidationError("GbtConfig: learning_rate must be in (0, 1]");
    if (max_depth < 1) throw ValidationError("GbtConfig: max_depth must be >= 1");
    if (!(subsample > 0.0 && subsample <= 1.0))
        throw ValidationError("GbtConfig: subsample must be in (0, 1]");
    if (!(colsample > 0.0 && colsample <= 1.0))
        throw ValidationError("GbtConfig: colsample must be in (0, 1]");
    if (min_samples_leaf < 1) throw ValidationError("GbtConfig: min_samples_leaf must be >= 1");
    if (!(lambda_l2 >= 0.0)) throw ValidationError("GbtConfig: lambda_l2 must be >= 0");
}

std::uint64_t bounded_rand(std::mt19937_64& rng, std::uint64_t n) {
    if (n == 0) throw ValidationError("bounded_rand: empty range");
    std::uint64_t rem = (std::numeric_limits<std::uint64_t>::max() % n + 1) % n;
    if (rem == 0) return rng() % n;
    std::uint64_t limit = 0 - rem; // 2^64 - rem
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % n;
}

std::vector<std::uint32_t> sample_without_replacement(std::mt19937_64& rng,
                                                      std::uint32_t n, std::uint32_t k) {
    std::vector<std::uint32_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0u);
    for (std::uint32_t i = 0; i < k && i + 1 < n; ++i) {
        std::uint32_t j = i + std::uint32_t(bounded_rand(rng, n - i));
        std::swap(idx[i], idx[j]);
    }
    idx.resize(std::min(k, n));
    return idx;
}

void shuffle_indices(std::mt19937_64& rng, std::vector<std::uint32_t>& idx) {
    for (std::size_t i = 0; i + 1 < idx.size(); ++i) {
        std::size_t j = i + std::size_t(bounded_rand(rng, idx.size() - i));
        std::swap(idx[i], idx[j]);
    }
}

double GbtModel::predict_row(const double* x) const {
    double acc = 0.0;
    for (const auto& tree : trees) acc += tree.predict_row(x);
    return base_score + config.learning_rate * acc;
}

std::vector<double> predict(const GbtModel& model, std::span<const double> X,
                            std::size_t n_rows) {
    if (n_rows > 0 && X.size() != n_rows * model.feature_count)
        throw ValidationError("predict: X has " + std::to_string(X.size() / n_rows) +
                              " columns, model expects " +
                              std::to_string(model.feature_count));
    std::vector<double> out(n_rows);
#pragma omp parallel for schedule(static) num_threads(thread_count())
    for (std::int64_t i = 0; i < std::int64_t(n_rows); ++i)
        out[std::size_t(i)] = model.predict_row(X.data() + std::size_t(i) * model.feature_count);
    return out;
}

namespace {

struct NodeStats {
    std::int32_t node_id = -1;
    std::uint32_t count = 0;
    double sum = 0.0;
};

struct BestSplit {
    double gain = 0.0;
    int feature = -1;
    double threshold = 0.0;
    bool valid = false;
};

inline double leaf_score(double sum, double count, double lambda) {
    return (sum * sum) / (count + lambda);
}

} // namespace

GbtModel train_gbt(std::span<const double> X, std::size_t n_rows, std::size_t n_cols,
                   std::span<const double> y, const GbtConfig& config,
                   std::vector<std::string> feature_names, TrainInfo* info) {
    config.validate();
    if (n_rows < 2) throw ValidationError("train_gbt: need at least 2 rows");
    if (n_cols < 1) throw ValidationError("train_gbt: need at least 1 feature");
    if (X.size() != n_rows * n_cols || y.size() != n_rows)
        throw ValidationError("train_gbt: shape mismatch");
    for (double v : X)
        if (!std::isfinite(v)) throw ValidationError("train_gbt: non-finite feature value");
    for (double v : y)
        if (!std::isfinite(v)) throw ValidationError("train_gbt: non-finite target value");
    if (!feature_names.empty() && feature_names.size() != n_cols)
        throw ValidationError("train_gbt: feature name count mismatch");

    GbtModel model;
    model.config = config;
    model.feature_count = n_cols;
    if (feature_names.empty()) {
        for (std::size_t f = 0; f < n_cols; ++f) feature_names.push_back("f" + std::to_string(f));
    }
    model.feature_names = std::move(feature_names);
    model.gain_by_feature.assign(n_cols, 0.0);
    model.splits_by_feature.assign(n_cols, 0);

    double ysum = 0.0;
    for (double v : y) ysum += v;
    model.base_score = ysum / double(n_rows);

    // Global argsort per feature, stable on row index for determinism.
    std::vector<std::vector<std::uint32_t>> order(n_cols);
#pragma omp parallel for schedule(dynamic) num_threads(thread_count())
    for (std::int64_t f = 0; f < std::int64_t(n_cols); ++f) {
        auto& ord = order[std::size_t(f)];
        ord.resize(n_rows);
        std::iota(ord.begin(), ord.end(), 0u);
        std::stable_sort(ord.begin(), ord.end(), [&](std::uint32_t a, std::uint32_t b) {
            return X[a * n_cols + std::size_t(f)] < X[b * n_cols + std::size_t(f)];
        });
    }

    std::vector<double> pred(n_rows, model.base_score);
    std::vector<double> residual(n_rows);
    for (std::size_t i = 0; i < n_rows; ++i) residual[i] = y[i] - pred[i];

    std::mt19937_64 rng(config.seed);
    const std::uint32_t sample_rows = std::max<std::uint32_t>(
        1, std::uint32_t(std::llround(config.subsample * double(n_rows))));
    const std::uint32_t sample_cols = std::max<std::uint32_t>(
        1, std::uint32_t(std::llround(config.colsample * double(n_cols))));

    std::vector<std::int32_t> row_slot(n_rows);      // frontier slot per row, -1 done
    std::vector<std::uint32_t> rows_used;

    for (int round = 0; round < config.n_estimators; ++round) {
        if (config.subsample < 1.0) {
            rows_used = sample_without_replacement(rng, std::uint32_t(n_rows), sample_rows);
            std::sort(rows_used.begin(), rows_used.end());
        } else {
            rows_used.resize(n_rows);
            std::iota(rows_used.begin(), rows_used.end(), 0u);
        }
        std::vector<std::uint32_t> cols_used;
        if (config.colsample < 1.0) {
            cols_used = sample_without_replacement(rng, std::uint32_t(n_cols), sample_cols);
            std::sort(cols_used.begin(), cols_used.end());
        } else {
            cols_used.resize(n_cols);
            std::iota(cols_used.begin(), cols_used.end(), 0u);
        }

        Tree tree;
        std::fill(row_slot.begin(), row_slot.end(), -1);

        // Root covers the sampled rows.
        tree.nodes.push_back(TreeNode{});
        std::vector<NodeStats> frontier(1);
        frontier[0].node_id = 0;
        frontier[0].count = std::uint32_t(rows_used.size());
        {
            double s = 0.0;
            for (std::uint32_t r : rows_used) {
                s += residual[r];
                row_slot[r] = 0;
            }
            frontier[0].sum = s;
        }

        for (int depth = 0; depth < config.max_depth && !frontier.empty(); ++depth) {
            const std::size_t n_slots = frontier.size();
            // best[f_slot * n_slots + slot]: best split of (node, feature).
            std::vector<BestSplit> best(cols_used.size() * n_slots);

#pragma omp parallel for schedule(dynamic) num_threads(thread_count())
            for (std::int64_t fi = 0; fi < std::int64_t(cols_used.size()); ++fi) {
                const std::size_t f = cols_used[std::size_t(fi)];
                BestSplit* out = best.data() + std::size_t(fi) * n_slots;
                std::vector<std::uint32_t> left_cnt(n_slots, 0);
                std::vector<double> left_sum(n_slots, 0.0);
                std::vector<double> prev_val(n_slots, 0.0);
                std::vector<char> has_prev(n_slots, 0);

                for (std::uint32_t r : order[f]) {
                    std::int32_t slot = row_slot[r];
                    if (slot < 0) continue;
                    const NodeStats& ns = frontier[std::size_t(slot)];
                    double v = X[std::size_t(r) * n_cols + f];
                    if (has_prev[std::size_t(slot)] && v > prev_val[std::size_t(slot)]) {
                        double t = 0.5 * (prev_val[std::size_t(slot)] + v);
                        // Guard against rounding onto the lower value.
                        if (t > prev_val[std::size_t(slot)]) {
                            std::uint32_t nl = left_cnt[std::size_t(slot)];
                            std::uint32_t nr = ns.count - nl;
                            if (nl >= std::uint32_t(config.min_samples_leaf) &&
                                nr >= std::uint32_t(config.min_samples_leaf)) {
                                double sl = left_sum[std::size_t(slot)];
                                double sr = ns.sum - sl;
                                double gain = leaf_score(sl, nl, config.lambda_l2) +
                                              leaf_score(sr, nr, config.lambda_l2) -
                                              leaf_score(ns.sum, ns.count, config.lambda_l2);
                                BestSplit& b = out[std::size_t(slot)];
                                if (!b.valid || gain > b.gain) {
                                    b.valid = true;
                                    b.gain = gain;
                                    b.feature = int(f);
                                    b.threshold = t;
                                }
                            }
                        }
                    }
                    left_cnt[std::size_t(slot)] += 1;
                    left_sum[std::size_t(slot)] += residual[r];
                    prev_val[std::size_t(slot)] = v;
                    has_prev[std::size_t(slot)] = 1;
                }
            }

            // Merge across features: strictly greater gain wins, so the
            // lowest feature index (then lowest threshold) takes ties.
            std::vector<BestSplit> chosen(n_slots);
            for (std::size_t fi = 0; fi < cols_used.size(); ++fi)
                for (std::size_t s = 0; s < n_slots; ++s) {
                    const BestSplit& b = best[fi * n_slots + s];
                    if (b.valid && b.gain > 0.0 && (!chosen[s].valid || b.gain > chosen[s].gain))
                        chosen[s] = b;
                }

            // Materialize splits; unsplit frontier nodes become leaves.
            std::vector<std::int32_t> slot_left(n_slots, -1), slot_right(n_slots, -1);
            std::vector<NodeStats> next;
            for (std::size_t s = 0; s < n_slots; ++s) {
                NodeStats& ns = frontier[s];
                TreeNode& node = tree.nodes[std::size_t(ns.node_id)];
                if (!chosen[s].valid) {
                    node.weight = ns.sum / (double(ns.count) + config.lambda_l2);
                    continue;
                }
                node.feature = chosen[s].feature;
                node.threshold = chosen[s].threshold;
                node.left = std::int32_t(tree.nodes.size());
                node.right = node.left + 1;
                tree.nodes.push_back(TreeNode{});
                tree.nodes.push_back(TreeNode{});
                slot_left[s] = std::int32_t(next.size());
                slot_right[s] = std::int32_t(next.size() + 1);
                next.push_back(NodeStats{node.left, 0, 0.0});
                next.push_back(NodeStats{node.right, 0, 0.0});
                model.gain_by_feature[std::size_t(chosen[s].feature)] += chosen[s].gain;
                model.splits_by_feature[std::size_t(chosen[s].feature)] += 1;
            }

            // Reassign rows in ascending row order; child stats accumulate in
            // that same order so they are reproducible.
            for (std::uint32_t r : rows_used) {
                std::int32_t slot = row_slot[r];
                if (slot < 0) continue;
                if (slot_left[std::size_t(slot)] < 0) {
                    row_slot[r] = -1; // node became a leaf
                    continue;
                }
                const BestSplit& b = chosen[std::size_t(slot)];
                std::int32_t child = X[std::size_t(r) * n_cols + std::size_t(b.feature)] <
                                             b.threshold
                                         ? slot_left[std::size_t(slot)]
                                         : slot_right[std::size_t(slot)];
                row_slot[r] = child;
                next[std::size_t(child)].count += 1;
                next[std::size_t(child)].sum += residual[r];
            }
            frontier = std::move(next);
        }

        // Depth limit reached: remaining frontier nodes are leaves.
        for (const NodeStats& ns : frontier) {
            tree.nodes[std::size_t(ns.node_id)].weight =
                ns.sum / (double(ns.count) + config.lambda_l2);
        }
        for (std::uint32_t r : rows_used) row_slot[r] = -1;

        // Update predictions/residuals on every training row.
#pragma omp parallel for schedule(static) num_threads(thread_count())
        for (std::int64_t i = 0; i < std::int64_t(n_rows); ++i) {
            double out = tree.predict_row(X.data() + std::size_t(i) * n_cols);
            pred[std::size_t(i)] += config.learning_rate * out;
            residual[std::size_t(i)] = y[std::size_t(i)] - pred[std::size_t(i)];
        }

        if (info != nullptr) {
            double ss = 0.0;
            for (std::size_t i = 0; i < n_rows; ++i) ss += residual[i] * residual[i];
            info->round_train_mse.push_back(ss / double(n_rows));
        }

        model.trees.push_back(std::move(tree));
    }
    return model;
}

double mse(std::span<const double> y, std::span<const double> y_hat) {
    if (y.size() != y_hat.size()) throw ValidationError("mse: length mismatch");
    if (y.empty()) throw ValidationError("mse: empty input");
    double ss = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        double d = y[i] - y_hat[i];
        ss += d * d;
    }
    return ss / double(y.size());
}

double r2(std::span<const double> y, std::span<const double> y_hat) {
    if (y.size() != y_hat.size()) throw ValidationError("r2: length mismatch");
    if (y.empty()) throw ValidationError("r2: empty input");
    double mean = 0.0;
    for (double v : y) mean += v;
    mean /= double(y.size());
    double ss_res = 0.0, ss_tot = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        double dr = y[i] - y_hat[i];
        double dt = y[i] - mean;
        ss_res += dr * dr;
        ss_tot += dt * dt;
    }
    if (ss_tot == 0.0) throw ValidationError("r2: constant target");
    return 1.0 - ss_res / ss_tot;
}

SplitIndices train_test_split(std::size_t n_rows, double train_fraction,
                              std::uint64_t seed) {
    if (!(train_fraction > 0.0 && train_fraction < 1.0))
        throw ValidationError("train_test_split: fraction must be in (0, 1)");
    std::vector<std::uint32_t> idx(n_rows);
    std::iota(idx.begin(), idx.end(), 0u);
    std::mt19937_64 rng(seed);
    shuffle_indices(rng, idx);
    std::size_t n_train = std::size_t(std::llround(train_fraction * double(n_rows)));
    if (n_train == 0 || n_train >= n_rows)
        throw ValidationError("train_test_split: too few rows to populate both sides");
    SplitIndices out;
    out.train.assign(idx.begin(), idx.begin() + std::ptrdiff_t(n_train));
    out.test.assign(idx.begin() + std::ptrdiff_t(n_train), idx.end());
    return out;
}

std::vector<double> kfold_cv(std::span<const double> X, std::size_t n_rows,
                             std::size_t n_cols, std::span<const double> y,
                             const GbtConfig& config, int k, std::uint64_t seed) {
    if (k < 2) throw ValidationError("kfold_cv: k must be >= 2");
    if (std::size_t(k) > n_rows) throw ValidationError("kfold_cv: k exceeds row count");

    std::vector<std::uint32_t> idx(n_rows);
    std::iota(idx.begin(), idx.end(), 0u);
    std::mt19937_64 rng(seed);
    shuffle_indices(rng, idx);

    // Fold sizes n/k, the first n%k folds one longer.
    std::vector<double> fold_r2;
    std::size_t base = n_rows / std::size_t(k);
    std::size_t extra = n_rows % std::size_t(k);
    std::size_t start = 0;
    for (int fold = 0; fold < k; ++fold) {
        std::size_t len = base + (std::size_t(fold) < extra ? 1 : 0);
        std::vector<std::uint32_t> val(idx.begin() + std::ptrdiff_t(start),
                                       idx.begin() + std::ptrdiff_t(start + len));
        std::vector<std::uint32_t> train;
        train.reserve(n_rows - len);
        train.insert(train.end(), idx.begin(), idx.begin() + std::ptrdiff_t(start));
        train.insert(train.end(), idx.begin() + std::ptrdiff_t(start + len), idx.end());
        start += len;

        std::vector<double> Xt, yt, Xv, yv;
        Xt.reserve(train.size() * n_cols);
        yt.reserve(train.size());
        for (std::uint32_t r : train) {
            Xt.insert(Xt.end(), X.begin() + r * n_cols, X.begin() + (r + 1) * n_cols);
            yt.push_back(y[r]);
        }
        Xv.reserve(val.size() * n_cols);
        yv.reserve(val.size());
        for (std::uint32_t r : val) {
            Xv.insert(Xv.end(), X.begin() + r * n_cols, X.begin() + (r + 1) * n_cols);
            yv.push_back(y[r]);
        }

        GbtModel model = train_gbt(Xt, train.size(), n_cols, yt, config);
        auto pred = predict(model, Xv, val.size());
        fold_r2.push_back(r2(yv, pred));
    }
    return fold_r2;
}

std::vector<double> feature_importance(const GbtModel& model, ImportanceKind kind) {
    std::vector<double> out(model.feature_count, 0.0);
    double total = 0.0;
    for (std::size_t f = 0; f < model.feature_count; ++f) {
        double v = kind == ImportanceKind::Gain ? model.gain_by_feature[f]
                                                : double(model.splits_by_feature[f]);
        out[f] = v;
        total += v;
    }
    if (total > 0.0)
        for (double& v : out) v /= total;
    return out;
}

// ---------------------------------------------------------------------------
// Serialization: versioned plain text, one s-expression tree per line.
// ---------------------------------------------------------------------------

namespace {

void write_node(const Tree& tree, std::int32_t i, std::string& out) {
    const TreeNode& n = tree.nodes[std::size_t(i)];
    if (n.is_leaf()) {
        out += "(l ";
        out += format_double(n.weight);
        out += ")";
        return;
    }
    out += "(s ";
    out += std::to_string(n.feature);
    out += " ";
    out += format_double(n.threshold);
    out += " ";
    write_node(tree, n.left, out);
    out += " ";
    write_node(tree, n.right, out);
    out += ")";
}

struct TreeTokens {
    const std::vector<std::string>& toks;
    std::size_t pos = 0;
    int line = 0;

    [[noreturn]] void fail(const std::string& msg) const {
        throw InputError("model line " + std::to_string(line) + ": " + msg);
    }
    const std::string& next() {
        if (pos >= toks.size()) fail("unexpected end of tree expression");
        return toks[pos++];
    }
};

std::int32_t parse_node(TreeTokens& t, Tree& tree) {
    if (t.next() != "(") t.fail("expected '('");
    const std::string& kind = t.next();
    std::int32_t idx = std::int32_t(tree.nodes.size());
    tree.nodes.push_back(TreeNode{});
    if (kind == "l") {
        auto w = parse_double(t.next());
        if (!w) t.fail("bad leaf weight");
        tree.nodes[std::size_t(idx)].weight = *w;
        if (t.next() != ")") t.fail("expected ')'");
        return idx;
    }
    if (kind != "s") t.fail("expected 's' or 'l'");
    auto f = parse_int(t.next());
    auto thr = parse_double(t.next());
    if (!f || *f < 0 || !thr) t.fail("bad split fields");
    std::int32_t left = parse_node(t, tree);
    std::int32_t right = parse_node(t, tree);
    if (t.next() != ")") t.fail("expected ')'");
    TreeNode& n = tree.nodes[std::size_t(idx)];
    n.feature = int(*f);
    n.threshold = *thr;
    n.left = left;
    n.right = right;
    return idx;
}

std::vector<std::string> tokenize_tree(const std::string& line) {
    std::vector<std::string> toks;
    std::string cur;
    for (char c : line) {
        if (c == '(' || c == ')') {
            if (!cur.empty()) {
                toks.push_back(cur);
                cur.clear();
            }
            toks.push_back(std::string(1, c));
        } else if (std::isspace(static_cast<unsigned char>(c))) {
            if (!cur.empty()) {
                toks.push_back(cur);
                cur.clear();
            }
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) toks.push_back(cur);
    return toks;
}

} // namespace

std::string serialize_model(const GbtModel& model) {
    std::string out;
    out += "fireseverity-gbt v1\n";
    out += "rng mt19937_64 fisher-yates-rejection\n";
    out += "n_estimators " + std::to_string(model.config.n_estimators) + "\n";
    out += "learning_rate " + format_double(model.config.learning_rate) + "\n";
    out += "max_depth " + std::to_string(model.config.max_depth) + "\n";
    out += "subsample " + format_double(model.config.subsample) + "\n";
    out += "colsample " + format_double(model.config.colsample) + "\n";
    out += "min_samples_leaf " + std::to_string(model.config.min_samples_leaf) + "\n";
    out += "lambda_l2 " + format_double(model.config.lambda_l2) + "\n";
    out += "seed " + std::to_string(model.config.seed) + "\n";
    out += "base_score " + format_double(model.base_score) + "\n";
    out += "feature_count " + std::to_string(model.feature_count) + "\n";
    out += "feature_names";
    for (const auto& n : model.feature_names) out += " " + n;
    out += "\n";
    out += "gain_by_feature";
    for (double g : model.gain_by_feature) out += " " + format_double(g);
    out += "\n";
    out += "splits_by_feature";
    for (auto c : model.splits_by_feature) out += " " + std::to_string(c);
    out += "\n";
    out += "trees " + std::to_string(model.trees.size()) + "\n";
    for (const auto& tree : model.trees) {
        write_node(tree, 0, out);
        out += "\n";
    }
    return out;
}

GbtModel deserialize_model(const std::string& text) {
    std::vector<std::string> lines;
    {
        std::string cur;
        for (char c : text) {
            if (c == '\n') {
                lines.push_back(cur);
                cur.clear();
            } else if (c != '\r') {
                cur += c;
            }
        }
        if (!cur.empty()) lines.push_back(cur);
    }
    if (lines.empty() || lines[0] != "fireseverity-gbt v1")
        throw InputError("model line 1: not a fireseverity-gbt v1 file");

    GbtModel model;
    std::size_t n_trees = 0;
    std::size_t li = 1;
    auto bad = [&](const std::string& msg) -> void {
        throw InputError("model line " + std::to_string(li + 1) + ": " + msg);
    };
    for (; li < lines.size(); ++li) {
        auto toks = split_ws(lines[li]);
        if (toks.empty()) continue;
        const std::string& key = toks[0];
        auto want = [&](std::size_t n) {
            if (toks.size() != n + 1) bad("field '" + key + "' expects " + std::to_string(n) + " values");
        };
        if (key == "rng") {
            continue; // informational; the algorithm is pinned by the version line
        } else if (key == "n_estimators") {
            want(1);
            auto v = parse_int(toks[1]);
            if (!v) bad("bad integer");
            model.config.n_estimators = int(*v);
        } else if (key == "learning_rate") {
            want(1);
            auto v = parse_double(toks[1]);
            if (!v) bad("bad number");
            model.config.learning_rate = *v;
        } else if (key == "max_depth") {
            want(1);
            auto v = parse_int(toks[1]);
            if (!v) bad("bad integer");
            model.config.max_depth = int(*v);
        } else if (key == "subsample") {
            want(1);
            auto v = parse_double(toks[1]);
            if (!v) bad("bad number");
            model.config.subsample = *v;
        } else if (key == "colsample") {
            want(1);
            auto v = parse_double(toks[1]);
            if (!v) bad("bad number");
            model.config.colsample = *v;
        } else if (key == "min_samples_leaf") {
            want(1);
            auto v = parse_int(toks[1]);
            if (!v) bad("bad integer");
            model.config.min_samples_leaf = int(*v);
        } else if (key == "lambda_l2") {
            want(1);
            auto v = parse_double(toks[1]);
            if (!v) bad("bad number");
            model.config.lambda_l2 = *v;
        } else if (key == "seed") {
            want(1);
            auto v = parse_int(toks[1]);
            if (!v) bad("bad integer");
            model.config.seed = std::uint64_t(*v);
        } else if (key == "base_score") {
            want(1);
            auto v = parse_double(toks[1]);
            if (!v) bad("bad number");
            model.base_score = *v;
        } else if (key == "feature_count") {
            want(1);
            auto v = parse_int(toks[1]);
            if (!v || *v < 1) bad("bad feature count");
            model.feature_count = std::size_t(*v);
        } else if (key == "feature_names") {
            model.feature_names.assign(toks.begin() + 1, toks.end());
        } else if (key == "gain_by_feature") {
            for (std::size_t i = 1; i < toks.size(); ++i) {
                auto v = parse_double(toks[i]);
                if (!v) bad("bad gain value");
                model.gain_by_feature.push_back(*v);
            }
        } else if (key == "splits_by_feature") {
            for (std::size_t i = 1; i < toks.size(); ++i) {
                auto v = parse_int(toks[i]);
                if (!v) bad("bad split count");
                model.splits_by_feature.push_back(*v);
            }
        } else if (key == "trees") {
            want(1);
            auto v = parse_int(toks[1]);
            if (!v || *v < 0) bad("bad tree count");
            n_trees = std::size_t(*v);
            ++li;
            break;
        } else {
            bad("unknown field '" + key + "'");
        }
    }

    if (model.feature_count == 0) throw InputError("model: missing feature_count");
    if (model.feature_names.size() != model.feature_count)
        throw InputError("model: feature_names count disagrees with feature_count");
    if (model.gain_by_feature.size() != model.feature_count ||
        model.splits_by_feature.size() != model.feature_count)
        throw InputError("model: importance vectors disagree with feature_count");

    for (std::size_t t = 0; t < n_trees; ++t, ++li) {
        if (li >= lines.size()) throw InputError("model: fewer tree lines than declared");
        auto toks = tokenize_tree(lines[li]);
        TreeTokens cursor{toks, 0, int(li + 1)};
        Tree tree;
        parse_node(cursor, tree);
        if (cursor.pos != toks.size()) cursor.fail("trailing tokens after tree");
        for (const TreeNode& n : tree.nodes)
            if (!n.is_leaf() && std::size_t(n.feature) >= model.feature_count)
                cursor.fail("split feature index out of range");
        model.trees.push_back(std::move(tree));
    }
    return model;
}

void save_model(const GbtModel& model, const std::filesystem::path& path) {
    write_text_file(path, serialize_model(model));
}

GbtModel load_model(const std::filesystem::path& path) {
    return deserialize_model(read_text_file(path));
}

} // namespace fireseverity
