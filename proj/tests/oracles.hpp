// Independent brute-force oracles for the test suites. Everything here
// is written directly from the definitions and stays independent of the
// library's implementation paths.
#ifndef SUSTAIN_TESTS_ORACLES_HPP
#define SUSTAIN_TESTS_ORACLES_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace oracles {

// Sustained-activity labeler: span strictly more than t*365 days and the
// median over 30-day buckets (zeros included, trailing partial bucket
// included) at least k.
inline int label_sustained(const std::vector<std::int64_t>& commit_timestamps, int t_years,
                           int k_commits) {
    std::vector<std::int64_t> ts = commit_timestamps;
    std::sort(ts.begin(), ts.end());
    std::int64_t first = ts.front(), last = ts.back();
    double span_days = static_cast<double>(last - first) / 86400.0;
    if (!(span_days > 365.0 * t_years)) return 0;
    std::int64_t bucket_len = 30ll * 86400ll;
    std::size_t n_buckets = static_cast<std::size_t>((last - first) / bucket_len) + 1;
    std::vector<int> counts(n_buckets, 0);
    for (std::int64_t t : ts) counts[static_cast<std::size_t>((t - first) / bucket_len)] += 1;
    std::sort(counts.begin(), counts.end());
    double median;
    if (n_buckets % 2 == 1)
        median = counts[n_buckets / 2];
    else
        median = 0.5 * (counts[n_buckets / 2 - 1] + counts[n_buckets / 2]);
    return median >= k_commits ? 1 : 0;
}

// Minimal-prefix core set over commit counts. Committers arrive already
// ordered (count desc, then tie order); returns the core size.
inline std::size_t core_prefix_size(const std::vector<std::int64_t>& ordered_counts,
                                    double share = 0.8) {
    std::int64_t total = 0;
    for (std::int64_t c : ordered_counts) total += c;
    std::int64_t cum = 0;
    for (std::size_t i = 0; i < ordered_counts.size(); ++i) {
        cum += ordered_counts[i];
        if (static_cast<double>(cum) >= share * static_cast<double>(total)) return i + 1;
    }
    return ordered_counts.size();
}

// All-pairs AUC: concordant pairs count 1, ties 0.5.
inline double pairwise_auc(const std::vector<double>& scores, const std::vector<int>& labels) {
    double concordant = 0.0;
    std::size_t pairs = 0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        if (labels[i] != 1) continue;
        for (std::size_t j = 0; j < scores.size(); ++j) {
            if (labels[j] != 0) continue;
            ++pairs;
            if (scores[i] > scores[j]) concordant += 1.0;
            else if (scores[i] == scores[j]) concordant += 0.5;
        }
    }
    return concordant / static_cast<double>(pairs);
}

// Rank-sum U statistic computed from the definition (midranks for ties).
inline double rank_sum_u(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<std::pair<double, int>> pooled;
    for (double v : a) pooled.push_back({v, 0});
    for (double v : b) pooled.push_back({v, 1});
    std::sort(pooled.begin(), pooled.end());
    double rank_sum_a = 0.0;
    std::size_t i = 0;
    while (i < pooled.size()) {
        std::size_t j = i;
        while (j < pooled.size() && pooled[j].first == pooled[i].first) ++j;
        double midrank = 0.5 * static_cast<double>(i + 1 + j);
        for (std::size_t k = i; k < j; ++k)
            if (pooled[k].second == 0) rank_sum_a += midrank;
        i = j;
    }
    return rank_sum_a - static_cast<double>(a.size()) * (static_cast<double>(a.size()) + 1.0) / 2.0;
}

// Exact two-sided permutation p-value for the U statistic: enumerate all
// assignments of the pooled values to the two groups.
inline double exact_permutation_p(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> pooled;
    pooled.insert(pooled.end(), a.begin(), a.end());
    pooled.insert(pooled.end(), b.begin(), b.end());
    const std::size_t n = pooled.size(), na = a.size();
    double mu = static_cast<double>(na) * static_cast<double>(n - na) / 2.0;
    double observed = std::abs(rank_sum_u(a, b) - mu);

    std::vector<bool> pick(n, false);
    std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(na), true);
    std::sort(pick.begin(), pick.end());  // lexicographic start for next_permutation
    std::size_t extreme = 0, total = 0;
    do {
        std::vector<double> ga, gb;
        for (std::size_t i = 0; i < n; ++i) (pick[i] ? ga : gb).push_back(pooled[i]);
        double u = rank_sum_u(ga, gb);
        if (std::abs(u - mu) >= observed - 1e-12) ++extreme;
        ++total;
    } while (std::next_permutation(pick.begin(), pick.end()));
    return static_cast<double>(extreme) / static_cast<double>(total);
}

inline double mean_of(const std::vector<double>& xs) {
    double s = 0.0;
    for (double x : xs) s += x;
    return s / static_cast<double>(xs.size());
}

inline double population_std(const std::vector<double>& xs) {
    double m = mean_of(xs), ss = 0.0;
    for (double x : xs) ss += (x - m) * (x - m);
    return std::sqrt(ss / static_cast<double>(xs.size()));
}

inline double pearson(const std::vector<double>& x, const std::vector<double>& y) {
    double mx = mean_of(x), my = mean_of(y), sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    return sxy / std::sqrt(sxx * syy);
}

}  // namespace oracles

#endif
