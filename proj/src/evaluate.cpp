#include "sustain/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>
#include <random>

#include <Eigen/Dense>

#include "sustain/common.hpp"
#include "sustain/csv.hpp"
#include "sustain/errors.hpp"

namespace sustain {

Trainer boosted_trainer(const TrainConfig& config) {
    return [config](const Dataset& train) -> Scorer {
        auto model = std::make_shared<BoostedEnsemble>(sustain::train(train, config));
        return [model](std::span<const double> row) { return model->predict_proba(row); };
    };
}

std::vector<int> stratified_folds(const std::vector<int>& labels, int folds,
                                  std::uint64_t seed) {
    if (folds < 2) throw InvalidConfig("need at least 2 folds");
    std::vector<std::size_t> pos, neg;
    for (std::size_t i = 0; i < labels.size(); ++i)
        (labels[i] == 1 ? pos : neg).push_back(i);
    if (pos.size() < static_cast<std::size_t>(folds) ||
        neg.size() < static_cast<std::size_t>(folds))
        throw TooFewSamples("stratified CV needs >= folds rows per class");
    std::mt19937_64 rng(seed);
    std::vector<int> fold_of(labels.size(), -1);
    for (auto* cls : {&pos, &neg}) {
        std::shuffle(cls->begin(), cls->end(), rng);
        for (std::size_t i = 0; i < cls->size(); ++i)
            fold_of[(*cls)[i]] = static_cast<int>(i % static_cast<std::size_t>(folds));
    }
    return fold_of;
}

EvalReport kfold_cv(const Dataset& data, const Trainer& trainer, int folds,
                    std::uint64_t seed) {
    std::vector<int> fold_of = stratified_folds(data.labels, folds, seed);
    EvalReport report;
    for (int f = 0; f < folds; ++f) {
        Dataset train_set, test_set;
        train_set.n_cols = test_set.n_cols = data.n_cols;
        for (std::size_t i = 0; i < data.n_rows(); ++i) {
            (fold_of[i] == f ? test_set : train_set)
                .add_row(data.project_ids[i], data.row(i), data.labels[i]);
        }
        Scorer scorer = trainer(train_set);
        std::vector<double> scores(test_set.n_rows());
        for (std::size_t i = 0; i < test_set.n_rows(); ++i) scores[i] = scorer(test_set.row(i));
        FoldResult fr;
        fr.auc = auc(scores, test_set.labels);
        PrecisionRecall pr = precision_recall_at(scores, test_set.labels);
        fr.precision = pr.precision;
        fr.recall = pr.recall;
        report.folds.push_back(fr);
    }
    for (const FoldResult& fr : report.folds) {
        report.auc += fr.auc;
        report.precision += fr.precision;
        report.recall += fr.recall;
    }
    auto nf = static_cast<double>(report.folds.size());
    report.auc /= nf;
    report.precision /= nf;
    report.recall /= nf;
    return report;
}

double LogisticModel::predict_proba(std::span<const double> row) const {
    if (row.size() != coefficients.size())
        throw DimensionMismatch("logistic model expects " +
                                std::to_string(coefficients.size()) + " features");
    double eta = intercept;
    for (std::size_t j = 0; j < row.size(); ++j) eta += coefficients[j] * row[j];
    return sigmoid(eta);
}

LogisticModel fit_logistic(const Dataset& data, double l2, int max_iter, double tol) {
    const std::size_t n = data.n_rows();
    const std::size_t p = data.n_cols;
    if (n < 2) throw TooFewSamples("need at least 2 rows");
    bool has_pos = false, has_neg = false;
    for (int y : data.labels) (y == 1 ? has_pos : has_neg) = true;
    if (!has_pos || !has_neg) throw SingleClass("logistic fit needs both classes");

    // Standardize for conditioning; coefficients are mapped back below.
    std::vector<double> mean(p, 0.0), std_dev(p, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < p; ++j) mean[j] += data.at(i, j);
    for (std::size_t j = 0; j < p; ++j) mean[j] /= static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < p; ++j) {
            double d = data.at(i, j) - mean[j];
            std_dev[j] += d * d;
        }
    for (std::size_t j = 0; j < p; ++j) {
        std_dev[j] = std::sqrt(std_dev[j] / static_cast<double>(n));
        if (std_dev[j] == 0.0) std_dev[j] = 1.0;  // constant column stays at zero weight
    }

    Eigen::MatrixXd z(n, p);
    Eigen::VectorXd y(n);
    for (std::size_t i = 0; i < n; ++i) {
        y(static_cast<Eigen::Index>(i)) = data.labels[i];
        for (std::size_t j = 0; j < p; ++j)
            z(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                (data.at(i, j) - mean[j]) / std_dev[j];
    }

    Eigen::VectorXd beta = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(p) + 1);
    auto np = static_cast<Eigen::Index>(p);
    for (int iter = 0; iter < max_iter; ++iter) {
        Eigen::VectorXd eta = z * beta.head(np);
        eta.array() += beta(np);
        Eigen::VectorXd prob = eta.unaryExpr([](double v) { return sigmoid(v); });
        Eigen::VectorXd resid = prob - y;

        Eigen::VectorXd grad(np + 1);
        grad.head(np) = z.transpose() * resid + l2 * beta.head(np);
        grad(np) = resid.sum();
        if (grad.norm() <= tol) break;

        Eigen::VectorXd w = prob.array() * (1.0 - prob.array()) + 1e-10;
        Eigen::MatrixXd zw = z.array().colwise() * w.array();
        Eigen::MatrixXd hess(np + 1, np + 1);
        hess.topLeftCorner(np, np) = z.transpose() * zw;
        hess.topLeftCorner(np, np).diagonal().array() += l2;
        hess.topRightCorner(np, 1) = zw.colwise().sum().transpose();
        hess.bottomLeftCorner(1, np) = zw.colwise().sum();
        hess(np, np) = w.sum();
        beta -= hess.ldlt().solve(grad);
    }

    LogisticModel model;
    model.coefficients.resize(p);
    model.intercept = beta(np);
    for (std::size_t j = 0; j < p; ++j) {
        model.coefficients[j] = beta(static_cast<Eigen::Index>(j)) / std_dev[j];
        model.intercept -= beta(static_cast<Eigen::Index>(j)) * mean[j] / std_dev[j];
    }
    return model;
}

BaselineResult train_baseline_logreg(const Dataset& data, int folds, std::uint64_t seed,
                                     double l2) {
    BaselineResult out;
    out.model = fit_logistic(data, l2);
    Trainer trainer = [l2](const Dataset& train) -> Scorer {
        auto model = std::make_shared<LogisticModel>(fit_logistic(train, l2));
        return [model](std::span<const double> row) { return model->predict_proba(row); };
    };
    out.report = kfold_cv(data, trainer, folds, seed);
    out.report.model_name = "logreg";
    return out;
}

EvalReport ablation_run(const Dataset& data, Dimension dimension, const TrainConfig& config,
                        int folds, std::uint64_t seed) {
    Dataset subset = select_columns(data, dimension_columns(dimension));
    EvalReport report = kfold_cv(subset, boosted_trainer(config), folds, seed);
    report.dimension = to_string(dimension);
    return report;
}

void write_eval_csv(const std::string& path, const std::vector<EvalReport>& reports,
                    const std::string& provenance_params) {
    CsvWriter w(path, provenance_line(provenance_params),
                {"model", "dimension", "m", "t", "k", "auc", "precision", "recall",
                 "fold_aucs"});
    for (const EvalReport& r : reports) {
        std::string fold_aucs;
        for (std::size_t i = 0; i < r.folds.size(); ++i) {
            if (i) fold_aucs += ';';
            fold_aucs += format_double(r.folds[i].auc);
        }
        w.write_row({r.model_name, r.dimension, std::to_string(r.m), std::to_string(r.t),
                     std::to_string(r.k), format_double(r.auc), format_double(r.precision),
                     format_double(r.recall), fold_aucs});
    }
    w.close();
}

}  // namespace sustain
