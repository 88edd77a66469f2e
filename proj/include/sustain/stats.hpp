#ifndef SUSTAIN_STATS_HPP
#define SUSTAIN_STATS_HPP

#include <vector>

namespace sustain {

struct MannWhitneyResult {
    double u = 0.0;  // U statistic of the first sample
    double z = 0.0;  // tie-corrected normal approximation, continuity-corrected
    double p = 1.0;  // two-sided
};

// Mann-Whitney U with midranks for ties. When every pooled value is
// identical the variance vanishes and the result degenerates to z = 0,
// p = 1.
MannWhitneyResult mann_whitney_u(const std::vector<double>& a, const std::vector<double>& b);

// flag <=> p < alpha / n_tests.
bool bonferroni_significant(double p, int n_tests, double alpha = 0.05);

double bonferroni_threshold(int n_tests, double alpha = 0.05);

enum class EffectDirection { Up, Down, None };
enum class EffectMagnitude { Negligible, Small, Medium, Large };

// Category boundaries for |r|.
inline constexpr double kEffectSmall = 0.1;
inline constexpr double kEffectMedium = 0.3;
inline constexpr double kEffectLarge = 0.5;

struct EffectClass {
    EffectDirection direction = EffectDirection::None;
    EffectMagnitude magnitude = EffectMagnitude::Negligible;
};

// Direction from the group medians; magnitude from |r| with inclusive
// boundaries at 0.1 / 0.3 / 0.5. Equal medians report no direction and a
// negligible effect.
EffectClass classify_effect(double median_neg, double median_pos, double r);

const char* to_string(EffectDirection d);
const char* to_string(EffectMagnitude m);

double median(std::vector<double> values);
double mean(const std::vector<double>& values);

}  // namespace sustain

#endif
