#include "sustain/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "sustain/errors.hpp"

namespace sustain {

MannWhitneyResult mann_whitney_u(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.empty() || b.empty()) throw TooFewSamples("both samples must be non-empty");
    const std::size_t na = a.size(), nb = b.size(), n = na + nb;

    struct Tagged {
        double value;
        bool from_a;
    };
    std::vector<Tagged> pooled;
    pooled.reserve(n);
    for (double v : a) pooled.push_back({v, true});
    for (double v : b) pooled.push_back({v, false});
    std::sort(pooled.begin(), pooled.end(),
              [](const Tagged& x, const Tagged& y) { return x.value < y.value; });

    // Midranks over tied runs; accumulate the tie-correction term.
    double rank_sum_a = 0.0;
    double tie_term = 0.0;  // sum of t^3 - t over tie groups
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j < n && pooled[j].value == pooled[i].value) ++j;
        double midrank = 0.5 * static_cast<double>(i + 1 + j);
        auto t = static_cast<double>(j - i);
        tie_term += t * t * t - t;
        for (std::size_t k = i; k < j; ++k)
            if (pooled[k].from_a) rank_sum_a += midrank;
        i = j;
    }

    MannWhitneyResult result;
    double dna = static_cast<double>(na), dnb = static_cast<double>(nb),
           dn = static_cast<double>(n);
    result.u = rank_sum_a - dna * (dna + 1.0) / 2.0;

    double mu = dna * dnb / 2.0;
    double variance =
        dna * dnb / 12.0 * ((dn + 1.0) - tie_term / (dn * (dn - 1.0)));
    if (variance <= 0.0) {
        // All pooled values are equal.
        result.z = 0.0;
        result.p = 1.0;
        return result;
    }
    double diff = result.u - mu;
    if (std::abs(diff) <= 0.5) {
        result.z = 0.0;
    } else {
        double corrected = diff > 0 ? diff - 0.5 : diff + 0.5;  // continuity correction
        result.z = corrected / std::sqrt(variance);
    }
    result.p = std::min(1.0, std::erfc(std::abs(result.z) / std::sqrt(2.0)));
    return result;
}

double bonferroni_threshold(int n_tests, double alpha) {
    if (n_tests < 1) throw InvalidConfig("n_tests must be >= 1");
    return alpha / static_cast<double>(n_tests);
}

bool bonferroni_significant(double p, int n_tests, double alpha) {
    return p < bonferroni_threshold(n_tests, alpha);
}

EffectClass classify_effect(double median_neg, double median_pos, double r) {
    if (r < 0.0) throw InvalidConfig("effect size r must be >= 0");
    EffectClass e;
    if (median_pos > median_neg)
        e.direction = EffectDirection::Up;
    else if (median_pos < median_neg)
        e.direction = EffectDirection::Down;
    else
        e.direction = EffectDirection::None;
    if (e.direction == EffectDirection::None) {
        e.magnitude = EffectMagnitude::Negligible;
        return e;
    }
    if (r >= kEffectLarge)
        e.magnitude = EffectMagnitude::Large;
    else if (r >= kEffectMedium)
        e.magnitude = EffectMagnitude::Medium;
    else if (r >= kEffectSmall)
        e.magnitude = EffectMagnitude::Small;
    else
        e.magnitude = EffectMagnitude::Negligible;
    return e;
}

const char* to_string(EffectDirection d) {
    switch (d) {
        case EffectDirection::Up: return "up";
        case EffectDirection::Down: return "down";
        case EffectDirection::None: return "none";
    }
    return "none";
}

const char* to_string(EffectMagnitude m) {
    switch (m) {
        case EffectMagnitude::Negligible: return "negligible";
        case EffectMagnitude::Small: return "small";
        case EffectMagnitude::Medium: return "medium";
        case EffectMagnitude::Large: return "large";
    }
    return "negligible";
}

double median(std::vector<double> values) {
    if (values.empty()) throw TooFewSamples("median of empty sample");
    std::sort(values.begin(), values.end());
    std::size_t n = values.size();
    return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

double mean(const std::vector<double>& values) {
    if (values.empty()) throw TooFewSamples("mean of empty sample");
    return std::accumulate(values.begin(), values.end(), 0.0) /
           static_cast<double>(values.size());
}

}  // namespace sustain
