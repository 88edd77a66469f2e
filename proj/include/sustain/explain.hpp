#ifndef SUSTAIN_EXPLAIN_HPP
#define SUSTAIN_EXPLAIN_HPP

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "sustain/dataset.hpp"

namespace sustain {

// Per-feature training-corpus statistics backing the perturbation
// neighborhood: quartile bin edges, standardization moments, and the
// degenerate-feature flags.
struct FeatureStats {
    double min = 0.0, q1 = 0.0, q2 = 0.0, q3 = 0.0, max = 0.0;
    double mean = 0.0, std_dev = 0.0;
    bool constant = false;  // bin collapses; the feature is kept fixed
    bool binary = false;    // values in {0,1}; flipped/kept uniformly
};

struct TrainStats {
    std::vector<FeatureStats> per_feature;

    static TrainStats compute(const Dataset& data);
    double standardize(std::size_t feature, double value) const;
};

struct ExplainConfig {
    std::size_t n_samples = 5000;
    // 0 selects the default 0.75 * sqrt(n_features) on standardized
    // features.
    double kernel_width = 0.0;
    double ridge_alpha = 1.0;
    std::uint64_t seed = 0;
};

// Neighborhood of one instance. Raw rows feed the black-box model;
// standardized rows are the representation distances and the local fit
// use.
struct Perturbation {
    std::size_t n_samples = 0;
    std::size_t n_features = 0;
    std::vector<double> raw;           // row-major
    std::vector<double> standardized;  // row-major
    std::vector<double> distance;      // Euclidean, standardized space

    std::span<const double> raw_row(std::size_t i) const {
        return {raw.data() + i * n_features, n_features};
    }
};

// Each feature's quartile bin is redrawn uniformly over the four bins and
// materialized uniformly within the chosen bin's empirical range; binary
// features are flipped or kept; constant features stay fixed.
Perturbation perturb(std::span<const double> instance, const TrainStats& stats,
                     std::size_t n_samples, std::uint64_t seed);

// exp(-d^2 / width^2): 1 at distance 0, strictly decreasing.
double kernel_weight(double distance, double width);

struct RidgeFit {
    std::vector<double> coefficients;
    double intercept = 0.0;
    double r2 = 0.0;  // weighted
};

// Weighted ridge least squares with unpenalized intercept, solved to
// residual tolerance 1e-8. Weights are normalized to mean one so scaling
// them leaves the solution unchanged. ridge_alpha = 0 on a singular
// design raises RankDeficient.
RidgeFit fit_local_linear(std::size_t n, std::size_t p, const std::vector<double>& design,
                          const std::vector<double>& outputs,
                          const std::vector<double>& weights, double ridge_alpha);

struct LocalExplanation {
    std::string project_id;
    std::vector<double> coefficients;  // standardized-space, one per feature
    double intercept = 0.0;
    double fidelity = 0.0;  // weighted R^2 against the model outputs
    std::size_t n_samples = 0;
    std::uint64_t seed = 0;
};

using PredictFn = std::function<double(std::span<const double>)>;

// perturb -> model -> kernel weights -> weighted ridge.
LocalExplanation explain_instance(const PredictFn& model, std::span<const double> instance,
                                  const TrainStats& stats, const ExplainConfig& config);

// One explanation per project; per-project seeds derive from the master
// seed and the project id, so the batch is order- and thread-independent.
std::vector<LocalExplanation> explain_corpus(const PredictFn& model, const Dataset& data,
                                             const TrainStats& stats, const ExplainConfig& config,
                                             std::uint64_t master_seed);

void write_explanations_csv(const std::string& path,
                            const std::vector<LocalExplanation>& explanations,
                            const std::string& provenance_params);
std::vector<LocalExplanation> read_explanations_csv(const std::string& path);

}  // namespace sustain

#endif
