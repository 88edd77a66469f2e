// Scratch probe: measures how the local-surrogate coefficient of one
// planted variable varies with the instance's value, under an exactly
// known curved model. Not part of the test suite.
#include <cstdio>
#include <string>

#include "sustain/explain.hpp"
#include "sustain/boosting.hpp"
#include "sustain/synth.hpp"
#include "oracles.hpp"

using namespace sustain;

int main(int argc, char** argv) {
    double lin_mix = argc > 1 ? std::stod(argv[1]) : 0.15;
    double width = argc > 2 ? std::stod(argv[2]) : 4.0;
    std::size_t n_samples = argc > 3 ? std::stoul(argv[3]) : 2000;
    int var = argc > 4 ? std::stoi(argv[4]) : feat::cmt_actday;

    SynthConfig sc;
    sc.n_projects = 600;
    sc.seed = 3;
    SynthCorpus corpus = generate(sc);
    Dataset& data = corpus.features;
    TrainStats stats = TrainStats::compute(data);

    // Rank-normal scores of the chosen variable over the corpus.
    std::vector<double> values(data.n_rows());
    for (std::size_t i = 0; i < data.n_rows(); ++i)
        values[i] = data.at(i, static_cast<std::size_t>(var));
    std::vector<double> zr = normal_scores(values);

    // True model: curved link on this variable's rank-normal score,
    // interpolated piecewise-linearly in the raw value so perturbed
    // samples (off-corpus values) get sensible scores.
    std::vector<std::pair<double, double>> knots;  // raw -> rank-z
    {
        std::vector<std::size_t> order(values.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
        for (std::size_t i : order) knots.emplace_back(values[i], zr[i]);
    }
    auto rank_z_of = [&](double v) {
        if (v <= knots.front().first) return knots.front().second;
        if (v >= knots.back().first) return knots.back().second;
        std::size_t lo = 0, hi = knots.size() - 1;
        while (lo + 1 < hi) {
            std::size_t mid = (lo + hi) / 2;
            (knots[mid].first <= v ? lo : hi) = mid;
        }
        double span = knots[hi].first - knots[lo].first;
        double frac = span > 0 ? (v - knots[lo].first) / span : 0.0;
        return knots[lo].second + frac * (knots[hi].second - knots[lo].second);
    };
    const double s = 1.5;
    PredictFn fn = [&](std::span<const double> row) {
        double z = rank_z_of(row[static_cast<std::size_t>(var)]);
        double link = lin_mix * z + (1.0 - lin_mix) * (z * z - 1.0) / std::sqrt(2.0);
        return sigmoid(s * link);
    };

    ExplainConfig ec;
    ec.n_samples = n_samples;
    ec.kernel_width = width;
    ec.ridge_alpha = 1.0;

    std::vector<double> z0s, coefs;
    std::size_t n_neg = 0;
    for (std::size_t i = 0; i < 200; ++i) {
        ec.seed = 777 + i;
        std::vector<double> inst(data.row(i).begin(), data.row(i).end());
        LocalExplanation ex = explain_instance(fn, inst, stats, ec);
        z0s.push_back(zr[i]);
        coefs.push_back(ex.coefficients[static_cast<std::size_t>(var)]);
        if (ex.coefficients[static_cast<std::size_t>(var)] < 0) ++n_neg;
    }
    std::printf("var=%d lin=%.2f width=%.1f n_samples=%zu  corr(z0,coef)=%.3f  neg=%zu/200\n",
                var, lin_mix, width, n_samples, oracles::pearson(z0s, coefs), n_neg);
    // Coefficient summary by z0 tercile.
    std::vector<std::size_t> order(z0s.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return z0s[a] < z0s[b]; });
    for (int t = 0; t < 3; ++t) {
        double sum = 0;
        std::size_t from = order.size() * t / 3, to = order.size() * (t + 1) / 3;
        for (std::size_t i = from; i < to; ++i) sum += coefs[order[i]];
        std::printf("  tercile %d (z0 %.2f..%.2f): mean coef %.5f\n", t, z0s[order[from]],
                    z0s[order[to - 1]], sum / static_cast<double>(to - from));
    }
    return 0;
}
