#ifndef SUSTAIN_EVALUATE_HPP
#define SUSTAIN_EVALUATE_HPP

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "sustain/boosting.hpp"
#include "sustain/dataset.hpp"
#include "sustain/metrics.hpp"

namespace sustain {

struct FoldResult {
    double auc = 0.0;
    double precision = 0.0;
    double recall = 0.0;
};

struct EvalReport {
    double auc = 0.0;
    double precision = 0.0;
    double recall = 0.0;
    std::vector<FoldResult> folds;
    // Parameter tuple the report belongs to.
    int m = 0, t = 0, k = 0;
    std::string dimension = "all";
    std::string model_name = "gbt";
};

// A trainer maps a training set to a row scorer. The boosted model and
// the logistic baseline plug in here so cross-validation treats them
// identically.
using Scorer = std::function<double(std::span<const double>)>;
using Trainer = std::function<Scorer(const Dataset&)>;

Trainer boosted_trainer(const TrainConfig& config);

// Deterministic stratified fold assignment: per class, indices are
// shuffled by seed and dealt round-robin. fold_of[i] in [0, folds).
std::vector<int> stratified_folds(const std::vector<int>& labels, int folds,
                                  std::uint64_t seed);

EvalReport kfold_cv(const Dataset& data, const Trainer& trainer, int folds,
                    std::uint64_t seed);

// L2-regularized logistic regression fit by Newton iterations to
// gradient-norm tolerance 1e-6 (features standardized internally).
struct LogisticModel {
    std::vector<double> coefficients;  // raw-feature space
    double intercept = 0.0;
    double predict_proba(std::span<const double> row) const;
};

LogisticModel fit_logistic(const Dataset& data, double l2 = 1.0, int max_iter = 100,
                           double tol = 1e-6);

struct BaselineResult {
    LogisticModel model;
    EvalReport report;
};

BaselineResult train_baseline_logreg(const Dataset& data, int folds, std::uint64_t seed,
                                     double l2 = 1.0);

// Cross-validated report for one variable sub-dimension (or the common /
// other / all composites).
EvalReport ablation_run(const Dataset& data, Dimension dimension, const TrainConfig& config,
                        int folds, std::uint64_t seed);

void write_eval_csv(const std::string& path, const std::vector<EvalReport>& reports,
                    const std::string& provenance_params);

}  // namespace sustain

#endif
