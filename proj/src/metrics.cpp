#include "sustain/metrics.hpp"

#include <algorithm>
#include <numeric>

#include "sustain/errors.hpp"

namespace sustain {

double auc(const std::vector<double>& scores, const std::vector<int>& labels) {
    if (scores.size() != labels.size() || scores.empty())
        throw DimensionMismatch("auc length mismatch");
    std::size_t n = scores.size();
    std::size_t n_pos = 0;
    for (int y : labels) n_pos += y == 1 ? 1 : 0;
    std::size_t n_neg = n - n_pos;
    if (n_pos == 0 || n_neg == 0) throw SingleClass("auc needs both classes");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

    // Midranks over tied score runs; rank sum of positives gives the
    // Mann-Whitney form of the statistic.
    double rank_sum_pos = 0.0;
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j < n && scores[order[j]] == scores[order[i]]) ++j;
        double midrank = 0.5 * static_cast<double>(i + 1 + j);  // ranks are 1-based
        for (std::size_t k = i; k < j; ++k)
            if (labels[order[k]] == 1) rank_sum_pos += midrank;
        i = j;
    }
    double np = static_cast<double>(n_pos), nn = static_cast<double>(n_neg);
    return (rank_sum_pos - np * (np + 1.0) / 2.0) / (np * nn);
}

PrecisionRecall precision_recall_at(const std::vector<double>& scores,
                                    const std::vector<int>& labels, double threshold) {
    if (scores.size() != labels.size() || scores.empty())
        throw DimensionMismatch("precision_recall length mismatch");
    std::size_t tp = 0, fp = 0, fn = 0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        bool predicted = scores[i] >= threshold;
        bool actual = labels[i] == 1;
        if (predicted && actual) ++tp;
        else if (predicted && !actual) ++fp;
        else if (!predicted && actual) ++fn;
    }
    PrecisionRecall pr;
    if (tp + fp == 0) {
        pr.precision = 0.0;
        pr.precision_defined = false;
    } else {
        pr.precision = static_cast<double>(tp) / static_cast<double>(tp + fp);
    }
    pr.recall = tp + fn == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(tp + fn);
    return pr;
}

}  // namespace sustain
