#ifndef SUSTAIN_METRICS_HPP
#define SUSTAIN_METRICS_HPP

#include <vector>

namespace sustain {

// Probability that a random positive ranks above a random negative;
// tied pairs credit 0.5. Computed from midranks.
double auc(const std::vector<double>& scores, const std::vector<int>& labels);

struct PrecisionRecall {
    double precision = 0.0;
    double recall = 0.0;
    bool precision_defined = true;  // false when nothing was predicted positive
};

// Confusion-matrix precision/recall with predicted-positive <=> score >=
// threshold. Precision is reported as 0 (flagged) without predictions.
PrecisionRecall precision_recall_at(const std::vector<double>& scores,
                                    const std::vector<int>& labels, double threshold = 0.5);

}  // namespace sustain

#endif
