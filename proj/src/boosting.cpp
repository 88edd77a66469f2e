#include "sustain/boosting.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <random>

#include <nlohmann/json.hpp>

#include "sustain/errors.hpp"

namespace sustain {

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

double log_loss(const std::vector<double>& probs, const std::vector<int>& labels) {
    if (probs.size() != labels.size() || probs.empty())
        throw DimensionMismatch("log_loss length mismatch");
    const double eps = 1e-15;
    double sum = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        double p = std::clamp(probs[i], eps, 1.0 - eps);
        sum -= labels[i] == 1 ? std::log(p) : std::log(1.0 - p);
    }
    return sum / static_cast<double>(probs.size());
}

void TrainConfig::validate() const {
    if (n_trees < 1) throw InvalidConfig("n_trees must be >= 1");
    if (max_depth < 1) throw InvalidConfig("max_depth must be >= 1");
    if (!(learning_rate > 0.0 && learning_rate <= 1.0))
        throw InvalidConfig("learning_rate must be in (0,1]");
    if (!(subsample > 0.0 && subsample <= 1.0)) throw InvalidConfig("subsample must be in (0,1]");
    if (!(colsample > 0.0 && colsample <= 1.0)) throw InvalidConfig("colsample must be in (0,1]");
    if (min_child_weight < 0.0) throw InvalidConfig("min_child_weight must be >= 0");
    if (l2_lambda < 0.0) throw InvalidConfig("l2_lambda must be >= 0");
}

double RegressionTree::predict(std::span<const double> row) const {
    int at = 0;
    while (!nodes[static_cast<std::size_t>(at)].is_leaf()) {
        const TreeNode& n = nodes[static_cast<std::size_t>(at)];
        double v = row[static_cast<std::size_t>(n.feature)];
        if (std::isnan(v))
            at = n.default_left ? n.left : n.right;
        else
            at = v < n.threshold ? n.left : n.right;
    }
    return nodes[static_cast<std::size_t>(at)].leaf_value;
}

double BoostedEnsemble::predict_raw(std::span<const double> row) const {
    if (n_features != 0 && row.size() != n_features)
        throw DimensionMismatch("expected " + std::to_string(n_features) + " features, got " +
                                std::to_string(row.size()));
    double score = base_score;
    for (const RegressionTree& t : trees) score += t.predict(row);
    return score;
}

double BoostedEnsemble::predict_proba(std::span<const double> row) const {
    return sigmoid(predict_raw(row));
}

std::vector<double> BoostedEnsemble::predict_proba_all(const Dataset& data) const {
    std::vector<double> out(data.n_rows());
    for (std::size_t i = 0; i < data.n_rows(); ++i) out[i] = predict_proba(data.row(i));
    return out;
}

namespace {

struct NodeStats {
    double g = 0.0;
    double h = 0.0;
    std::size_t count = 0;
};

struct SplitChoice {
    double gain = 0.0;
    int feature = -1;
    double threshold = 0.0;

    bool better_than(const SplitChoice& other) const {
        if (gain != other.gain) return gain > other.gain;
        if (feature != other.feature) return feature < other.feature;
        return threshold < other.threshold;
    }
};

double leaf_objective(double g, double h, double lambda) { return g * g / (h + lambda); }

}  // namespace

BoostedEnsemble train(const Dataset& data, const TrainConfig& config) {
    config.validate();
    const std::size_t n = data.n_rows();
    const std::size_t p = data.n_cols;
    if (n < 2) throw TooFewSamples("need at least 2 rows to train");
    bool has_pos = false, has_neg = false;
    for (int y : data.labels) (y == 1 ? has_pos : has_neg) = true;
    if (!has_pos || !has_neg) throw SingleClass("training data has a single class");

    // Per-feature value/index arrays in ascending value order (ties by
    // row index, which pins the split search deterministically).
    std::vector<std::vector<std::uint32_t>> sorted_idx(p);
    std::vector<std::vector<double>> sorted_val(p);
    for (std::size_t f = 0; f < p; ++f) {
        auto& idx = sorted_idx[f];
        idx.resize(n);
        std::iota(idx.begin(), idx.end(), 0u);
        std::stable_sort(idx.begin(), idx.end(), [&](std::uint32_t a, std::uint32_t b) {
            return data.at(a, f) < data.at(b, f);
        });
        auto& val = sorted_val[f];
        val.resize(n);
        for (std::size_t i = 0; i < n; ++i) val[i] = data.at(idx[i], f);
    }

    BoostedEnsemble model;
    model.base_score = 0.0;
    model.n_features = p;
    model.trees.reserve(static_cast<std::size_t>(config.n_trees));

    std::vector<double> scores(n, model.base_score);
    std::vector<double> grad(n), hess(n);
    std::vector<int> position(n);
    std::mt19937_64 rng(config.seed);

    const double lambda = config.l2_lambda;
    const double min_gain = 1e-12;

    std::vector<std::size_t> all_cols(p);
    std::iota(all_cols.begin(), all_cols.end(), std::size_t{0});

    for (int round = 0; round < config.n_trees; ++round) {
        for (std::size_t i = 0; i < n; ++i) {
            double prob = sigmoid(scores[i]);
            grad[i] = prob - static_cast<double>(data.labels[i]);
            hess[i] = std::max(prob * (1.0 - prob), 1e-16);
        }

        // Row and column sampling (drawn even when inactive to keep the
        // RNG stream aligned across configs is unnecessary; draws happen
        // only when sampling is enabled).
        std::vector<std::size_t> cols = all_cols;
        if (config.colsample < 1.0) {
            std::shuffle(cols.begin(), cols.end(), rng);
            auto keep = static_cast<std::size_t>(
                std::max(1.0, std::floor(config.colsample * static_cast<double>(p))));
            cols.resize(keep);
            std::sort(cols.begin(), cols.end());
        }

        RegressionTree tree;
        tree.nodes.push_back(TreeNode{});
        std::vector<NodeStats> stats(1);
        if (config.subsample < 1.0) {
            std::bernoulli_distribution pick(config.subsample);
            for (std::size_t i = 0; i < n; ++i) position[i] = pick(rng) ? 0 : -1;
        } else {
            std::fill(position.begin(), position.end(), 0);
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (position[i] < 0) continue;
            stats[0].g += grad[i];
            stats[0].h += hess[i];
            ++stats[0].count;
        }

        std::vector<int> frontier{0};
        for (int depth = 0; depth < config.max_depth && !frontier.empty(); ++depth) {
            // frontier_slot[node] >= 0 marks nodes being considered now.
            std::vector<int> frontier_slot(tree.nodes.size(), -1);
            for (std::size_t s = 0; s < frontier.size(); ++s)
                frontier_slot[static_cast<std::size_t>(frontier[s])] = static_cast<int>(s);
            std::vector<SplitChoice> best(frontier.size());

            struct Running {
                double g = 0.0, h = 0.0;
                std::size_t count = 0;
                double last_val = 0.0;
                bool has_last = false;
            };
            std::vector<Running> acc(frontier.size());
            for (std::size_t f : cols) {
                std::fill(acc.begin(), acc.end(), Running{});
                const auto& idx = sorted_idx[f];
                const auto& val = sorted_val[f];
                for (std::size_t i = 0; i < n; ++i) {
                    std::uint32_t r = idx[i];
                    int node = position[r];
                    if (node < 0) continue;
                    int slot = frontier_slot[static_cast<std::size_t>(node)];
                    if (slot < 0) continue;
                    Running& a = acc[static_cast<std::size_t>(slot)];
                    double v = val[i];
                    const NodeStats& total = stats[static_cast<std::size_t>(node)];
                    if (a.has_last && v != a.last_val && a.count > 0 && a.count < total.count) {
                        double gl = a.g, hl = a.h;
                        double gr = total.g - gl, hr = total.h - hl;
                        if (hl >= config.min_child_weight && hr >= config.min_child_weight) {
                            double threshold = a.last_val + 0.5 * (v - a.last_val);
                            if (threshold > a.last_val && threshold <= v) {
                                double gain = 0.5 * (leaf_objective(gl, hl, lambda) +
                                                     leaf_objective(gr, hr, lambda) -
                                                     leaf_objective(total.g, total.h, lambda));
                                SplitChoice cand{gain, static_cast<int>(f), threshold};
                                if (cand.gain > min_gain &&
                                    cand.better_than(best[static_cast<std::size_t>(slot)]))
                                    best[static_cast<std::size_t>(slot)] = cand;
                            }
                        }
                    }
                    a.g += grad[r];
                    a.h += hess[r];
                    ++a.count;
                    a.last_val = v;
                    a.has_last = true;
                }
            }

            std::vector<int> next_frontier;
            for (std::size_t s = 0; s < frontier.size(); ++s) {
                int node = frontier[s];
                TreeNode& tn = tree.nodes[static_cast<std::size_t>(node)];
                const NodeStats& total = stats[static_cast<std::size_t>(node)];
                if (best[s].feature < 0) {
                    tn.feature = -1;
                    tn.leaf_value =
                        -total.g / (total.h + lambda) * config.learning_rate;
                    continue;
                }
                tn.feature = best[s].feature;
                tn.threshold = best[s].threshold;
                tn.left = static_cast<int>(tree.nodes.size());
                tn.right = tn.left + 1;
                tree.nodes.push_back(TreeNode{});
                tree.nodes.push_back(TreeNode{});
                stats.push_back(NodeStats{});
                stats.push_back(NodeStats{});
                next_frontier.push_back(tn.left);
                next_frontier.push_back(tn.right);
            }

            // Route rows through fresh splits and collect child stats.
            for (std::size_t i = 0; i < n; ++i) {
                int node = position[i];
                if (node < 0) continue;
                const TreeNode& tn = tree.nodes[static_cast<std::size_t>(node)];
                if (tn.is_leaf()) continue;
                int child = data.at(i, static_cast<std::size_t>(tn.feature)) < tn.threshold
                                ? tn.left
                                : tn.right;
                position[i] = child;
                NodeStats& cs = stats[static_cast<std::size_t>(child)];
                cs.g += grad[i];
                cs.h += hess[i];
                ++cs.count;
            }
            frontier = std::move(next_frontier);
        }
        // Depth limit reached: finalize any still-open nodes.
        for (int node : frontier) {
            TreeNode& tn = tree.nodes[static_cast<std::size_t>(node)];
            const NodeStats& total = stats[static_cast<std::size_t>(node)];
            tn.feature = -1;
            tn.leaf_value = -total.g / (total.h + lambda) * config.learning_rate;
        }

        for (std::size_t i = 0; i < n; ++i) scores[i] += tree.predict(data.row(i));
        model.trees.push_back(std::move(tree));
    }
    return model;
}

std::string BoostedEnsemble::to_json() const {
    nlohmann::json j;
    j["format"] = "sustain-gbt";
    j["version"] = 1;
    j["base_score"] = base_score;
    j["n_features"] = n_features;
    nlohmann::json jtrees = nlohmann::json::array();
    for (const RegressionTree& t : trees) {
        nlohmann::json jnodes = nlohmann::json::array();
        for (const TreeNode& n : t.nodes) {
            nlohmann::json jn;
            if (n.is_leaf()) {
                jn["leaf"] = n.leaf_value;
            } else {
                jn["feature"] = n.feature;
                jn["threshold"] = n.threshold;
                jn["left"] = n.left;
                jn["right"] = n.right;
                jn["default_left"] = n.default_left;
            }
            jnodes.push_back(std::move(jn));
        }
        jtrees.push_back(std::move(jnodes));
    }
    j["trees"] = std::move(jtrees);
    return j.dump(2) + "\n";
}

BoostedEnsemble BoostedEnsemble::from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded() || j.value("format", "") != "sustain-gbt")
        throw Error("not a sustain-gbt model");
    BoostedEnsemble model;
    model.base_score = j.at("base_score").get<double>();
    model.n_features = j.at("n_features").get<std::size_t>();
    for (const auto& jt : j.at("trees")) {
        RegressionTree t;
        for (const auto& jn : jt) {
            TreeNode n;
            if (jn.contains("leaf")) {
                n.leaf_value = jn.at("leaf").get<double>();
            } else {
                n.feature = jn.at("feature").get<int>();
                n.threshold = jn.at("threshold").get<double>();
                n.left = jn.at("left").get<int>();
                n.right = jn.at("right").get<int>();
                n.default_left = jn.value("default_left", true);
                if (n.feature < 0 || static_cast<std::size_t>(n.feature) >= model.n_features)
                    throw Error("model node references feature out of range");
            }
            t.nodes.push_back(n);
        }
        if (t.nodes.empty()) throw Error("model contains an empty tree");
        model.trees.push_back(std::move(t));
    }
    return model;
}

void BoostedEnsemble::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out << to_json();
    if (!out) throw IoError("failed writing " + path);
}

BoostedEnsemble BoostedEnsemble::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return from_json(text);
}

}  // namespace sustain
