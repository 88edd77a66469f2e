#ifndef SUSTAIN_BOOSTING_HPP
#define SUSTAIN_BOOSTING_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sustain/dataset.hpp"

namespace sustain {

struct TrainConfig {
    int n_trees = 200;
    int max_depth = 6;
    double learning_rate = 0.1;
    double min_child_weight = 1.0;
    double l2_lambda = 1.0;
    double subsample = 1.0;
    double colsample = 1.0;
    std::uint64_t seed = 42;

    void validate() const;
};

struct TreeNode {
    int feature = -1;          // -1 marks a leaf
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    bool default_left = true;  // routing for absent values; features are dense today
    double leaf_value = 0.0;

    bool is_leaf() const { return feature < 0; }
};

struct RegressionTree {
    std::vector<TreeNode> nodes;

    double predict(std::span<const double> row) const;
};

// Additive ensemble of regression trees under a logistic link. Trained
// with second-order gradient statistics: g = p - y, h = p(1-p); split
// gain 0.5*[GL^2/(HL+l) + GR^2/(HR+l) - G^2/(H+l)], leaf weight
// -G/(H+l) scaled by the learning rate.
struct BoostedEnsemble {
    double base_score = 0.0;  // log-odds
    std::size_t n_features = 0;
    std::vector<RegressionTree> trees;

    double predict_raw(std::span<const double> row) const;
    double predict_proba(std::span<const double> row) const;
    std::vector<double> predict_proba_all(const Dataset& data) const;

    std::string to_json() const;
    static BoostedEnsemble from_json(const std::string& text);
    void save(const std::string& path) const;
    static BoostedEnsemble load(const std::string& path);
};

BoostedEnsemble train(const Dataset& data, const TrainConfig& config);

double sigmoid(double x);

// Mean logistic loss of probability predictions against 0/1 labels.
double log_loss(const std::vector<double>& probs, const std::vector<int>& labels);

}  // namespace sustain

#endif
