#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "sustain/boosting.hpp"
#include "sustain/errors.hpp"
#include "sustain/explain.hpp"
#include "helpers.hpp"

using namespace sustain;

namespace {

// A small continuous training corpus for stats.
Dataset stats_corpus(std::size_t n, std::size_t p, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::lognormal_distribution<double> skewed(1.0, 0.8);
    Dataset data;
    data.n_cols = p;
    std::vector<double> row(p);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < p; ++j)
            row[j] = j % 3 == 2 ? skewed(rng) : normal(rng) * (1.0 + static_cast<double>(j));
        data.add_row("R" + std::to_string(i), row, static_cast<int>(rng() % 2));
    }
    return data;
}

}  // namespace

TEST_CASE("training stats: quartiles, moments, degenerate flags") {
    Dataset data;
    data.n_cols = 3;
    for (int i = 1; i <= 5; ++i) {
        std::vector<double> row{static_cast<double>(i), 7.0, i <= 2 ? 0.0 : 1.0};
        data.add_row("R" + std::to_string(i), row, 0);
    }
    TrainStats stats = TrainStats::compute(data);
    CHECK(stats.per_feature[0].q2 == doctest::Approx(3.0));
    CHECK(stats.per_feature[0].q1 == doctest::Approx(2.0));
    CHECK(stats.per_feature[0].q3 == doctest::Approx(4.0));
    CHECK(stats.per_feature[0].mean == doctest::Approx(3.0));
    CHECK_FALSE(stats.per_feature[0].constant);
    CHECK(stats.per_feature[1].constant);
    CHECK(stats.per_feature[2].binary);
}

TEST_CASE("perturbation basics") {
    Dataset data = stats_corpus(400, 4, 3);
    TrainStats stats = TrainStats::compute(data);
    std::vector<double> instance(data.row(0).begin(), data.row(0).end());

    SUBCASE("zero samples give an empty matrix") {
        Perturbation nb = perturb(instance, stats, 0, 1);
        CHECK(nb.raw.empty());
        CHECK(nb.distance.empty());
    }
    SUBCASE("deterministic per seed") {
        Perturbation a = perturb(instance, stats, 50, 9);
        Perturbation b = perturb(instance, stats, 50, 9);
        CHECK(a.raw == b.raw);
        Perturbation c = perturb(instance, stats, 50, 10);
        CHECK(a.raw != c.raw);
    }
    SUBCASE("all-constant training keeps every sample at the instance") {
        Dataset flat;
        flat.n_cols = 2;
        for (int i = 0; i < 10; ++i) {
            std::vector<double> row{4.0, -1.0};
            flat.add_row("R" + std::to_string(i), row, 0);
        }
        TrainStats flat_stats = TrainStats::compute(flat);
        std::vector<double> inst{4.0, -1.0};
        Perturbation nb = perturb(inst, flat_stats, 25, 3);
        for (std::size_t s = 0; s < nb.n_samples; ++s) {
            CHECK(nb.raw[s * 2] == 4.0);
            CHECK(nb.raw[s * 2 + 1] == -1.0);
            CHECK(nb.distance[s] == 0.0);
        }
    }
    SUBCASE("samples stay inside the training range") {
        Perturbation nb = perturb(instance, stats, 500, 17);
        for (std::size_t s = 0; s < nb.n_samples; ++s)
            for (std::size_t j = 0; j < 4; ++j) {
                CHECK(nb.raw[s * 4 + j] >= stats.per_feature[j].min - 1e-12);
                CHECK(nb.raw[s * 4 + j] <= stats.per_feature[j].max + 1e-12);
            }
    }
}

TEST_CASE("perturbed bin marginals are uniform (chi-square)") {
    Dataset data = stats_corpus(2000, 3, 5);
    TrainStats stats = TrainStats::compute(data);
    std::vector<double> instance(data.row(0).begin(), data.row(0).end());
    const std::size_t n = 10000;
    Perturbation nb = perturb(instance, stats, n, 29);
    for (std::size_t j = 0; j < 3; ++j) {
        const FeatureStats& f = stats.per_feature[j];
        std::array<double, 4> counts{};
        for (std::size_t s = 0; s < n; ++s) {
            double v = nb.raw[s * 3 + j];
            int bin = v <= f.q1 ? 0 : v <= f.q2 ? 1 : v <= f.q3 ? 2 : 3;
            counts[static_cast<std::size_t>(bin)] += 1;
        }
        double expected = static_cast<double>(n) / 4.0;
        double chi2 = 0.0;
        for (double c : counts) chi2 += (c - expected) * (c - expected) / expected;
        // 3 dof, p > 0.01 <=> chi2 < 11.345.
        CHECK(chi2 < 11.345);
    }
}

TEST_CASE("kernel weight closed forms") {
    CHECK(kernel_weight(0.0, 2.0) == doctest::Approx(1.0));
    CHECK(kernel_weight(2.0, 2.0) == doctest::Approx(std::exp(-1.0)));
    CHECK_THROWS_AS(kernel_weight(1.0, 0.0), NonpositiveWidth);
    CHECK_THROWS_AS(kernel_weight(1.0, -2.0), NonpositiveWidth);
    double prev = 2.0;
    for (double d = 0.0; d <= 10.0; d += 0.25) {
        double w = kernel_weight(d, 3.0);
        CHECK(w < prev);
        CHECK(w > 0.0);
        CHECK(w <= 1.0);
        prev = w;
    }
}

TEST_CASE("weighted ridge fit") {
    std::mt19937_64 rng(37);
    std::normal_distribution<double> normal(0.0, 1.0);
    const std::size_t n = 300, p = 5;
    std::vector<double> design(n * p), weights(n);
    for (double& v : design) v = normal(rng);
    for (double& w : weights) w = 0.2 + std::abs(normal(rng));

    SUBCASE("recovers an exact linear function as alpha -> 0") {
        std::vector<double> truth{0.5, -1.25, 2.0, 0.0, 0.75};
        double intercept = 0.3;
        std::vector<double> outputs(n);
        for (std::size_t i = 0; i < n; ++i) {
            outputs[i] = intercept;
            for (std::size_t j = 0; j < p; ++j) outputs[i] += truth[j] * design[i * p + j];
        }
        RidgeFit fit = fit_local_linear(n, p, design, outputs, weights, 1e-12);
        for (std::size_t j = 0; j < p; ++j)
            CHECK(fit.coefficients[j] == doctest::Approx(truth[j]).epsilon(1e-6));
        CHECK(fit.intercept == doctest::Approx(intercept).epsilon(1e-6));
        CHECK(fit.r2 == doctest::Approx(1.0));
    }
    SUBCASE("constant outputs give zero coefficients and the constant") {
        std::vector<double> outputs(n, 0.42);
        RidgeFit fit = fit_local_linear(n, p, design, outputs, weights, 1.0);
        for (double c : fit.coefficients) CHECK(std::abs(c) < 1e-9);
        CHECK(fit.intercept == doctest::Approx(0.42));
        CHECK(fit.r2 == doctest::Approx(1.0));
    }
    SUBCASE("doubling every weight leaves the solution unchanged") {
        std::vector<double> outputs(n);
        for (std::size_t i = 0; i < n; ++i) outputs[i] = normal(rng);
        RidgeFit a = fit_local_linear(n, p, design, outputs, weights, 1.0);
        std::vector<double> doubled = weights;
        for (double& w : doubled) w *= 2.0;
        RidgeFit b = fit_local_linear(n, p, design, outputs, doubled, 1.0);
        for (std::size_t j = 0; j < p; ++j)
            CHECK(a.coefficients[j] == doctest::Approx(b.coefficients[j]).epsilon(1e-10));
        CHECK(a.intercept == doctest::Approx(b.intercept).epsilon(1e-10));
    }
    SUBCASE("singular design with zero ridge is rank deficient") {
        // Duplicate column.
        std::vector<double> dup(n * 2);
        for (std::size_t i = 0; i < n; ++i) {
            dup[i * 2] = design[i * p];
            dup[i * 2 + 1] = design[i * p];
        }
        std::vector<double> outputs(n);
        for (std::size_t i = 0; i < n; ++i) outputs[i] = normal(rng);
        CHECK_THROWS_AS(fit_local_linear(n, 2, dup, outputs, weights, 0.0), RankDeficient);
        // With any positive ridge it is solvable.
        RidgeFit fit = fit_local_linear(n, 2, dup, outputs, weights, 1e-6);
        CHECK(fit.coefficients.size() == 2);
    }
    SUBCASE("too few samples") {
        std::vector<double> tiny_design(4 * p), tiny_out(4), tiny_w(4, 1.0);
        CHECK_THROWS_AS(fit_local_linear(4, p, tiny_design, tiny_out, tiny_w, 1.0),
                        TooFewSamples);
    }
}

TEST_CASE("explaining models") {
    Dataset data = stats_corpus(1500, 8, 7);
    TrainStats stats = TrainStats::compute(data);
    ExplainConfig config;
    config.n_samples = 2000;
    config.ridge_alpha = 1e-6;
    config.seed = 404;

    SUBCASE("single-split model concentrates weight on its feature") {
        // One tree, one split on feature 2.
        BoostedEnsemble model;
        model.n_features = 8;
        RegressionTree tree;
        TreeNode root;
        root.feature = 2;
        root.threshold = stats.per_feature[2].q2;
        root.left = 1;
        root.right = 2;
        tree.nodes.push_back(root);
        TreeNode lo, hi;
        lo.feature = -1;
        lo.leaf_value = -1.2;
        hi.feature = -1;
        hi.leaf_value = 1.2;
        tree.nodes.push_back(lo);
        tree.nodes.push_back(hi);
        model.trees.push_back(tree);
        PredictFn fn = [&](std::span<const double> row) { return model.predict_proba(row); };
        std::vector<double> instance(data.row(3).begin(), data.row(3).end());
        LocalExplanation ex = explain_instance(fn, instance, stats, config);
        std::size_t best = 0;
        for (std::size_t j = 1; j < 8; ++j)
            if (std::abs(ex.coefficients[j]) > std::abs(ex.coefficients[best])) best = j;
        CHECK(best == 2);
        CHECK(ex.coefficients[2] > 0.0);
        CHECK(ex.fidelity <= 1.0 + 1e-9);
    }
    SUBCASE("constant model explains to zero") {
        PredictFn fn = [](std::span<const double>) { return 0.37; };
        std::vector<double> instance(data.row(1).begin(), data.row(1).end());
        LocalExplanation ex = explain_instance(fn, instance, stats, config);
        for (double c : ex.coefficients) CHECK(std::abs(c) < 1e-6);
        CHECK(ex.intercept == doctest::Approx(0.37));
    }
    SUBCASE("deterministic per seed, different across seeds") {
        PredictFn fn = [](std::span<const double> row) {
            return sigmoid(0.8 * row[0] - 0.5 * row[4]);
        };
        std::vector<double> instance(data.row(5).begin(), data.row(5).end());
        LocalExplanation a = explain_instance(fn, instance, stats, config);
        LocalExplanation b = explain_instance(fn, instance, stats, config);
        CHECK(a.coefficients == b.coefficients);
        ExplainConfig other = config;
        other.seed = 405;
        LocalExplanation c = explain_instance(fn, instance, stats, other);
        CHECK(a.coefficients != c.coefficients);
    }
    SUBCASE("sign stability across seeds on the strong features") {
        PredictFn fn = [](std::span<const double> row) {
            double logit = 0.0;
            // Every feature carries weight, alternating sign.
            for (std::size_t j = 0; j < row.size(); ++j)
                logit += (j % 2 == 0 ? 1.0 : -1.0) * (0.3 + 0.1 * static_cast<double>(j)) * row[j];
            return sigmoid(logit);
        };
        std::size_t agree = 0, checked = 0;
        for (int inst = 0; inst < 10; ++inst) {
            std::vector<double> instance(data.row(static_cast<std::size_t>(inst)).begin(),
                                         data.row(static_cast<std::size_t>(inst)).end());
            ExplainConfig s1 = config, s2 = config;
            s1.seed = 1000 + static_cast<std::uint64_t>(inst);
            s2.seed = 2000 + static_cast<std::uint64_t>(inst);
            LocalExplanation a = explain_instance(fn, instance, stats, s1);
            LocalExplanation b = explain_instance(fn, instance, stats, s2);
            // Magnitude threshold: 25th percentile of |coef|.
            std::vector<double> mags;
            for (double c : a.coefficients) mags.push_back(std::abs(c));
            std::sort(mags.begin(), mags.end());
            double cutoff = mags[mags.size() / 4];
            for (std::size_t j = 0; j < a.coefficients.size(); ++j) {
                if (std::abs(a.coefficients[j]) <= cutoff) continue;
                ++checked;
                agree += (a.coefficients[j] > 0) == (b.coefficients[j] > 0) ? 1 : 0;
            }
        }
        CHECK(checked > 0);
        CHECK(static_cast<double>(agree) >= 0.95 * static_cast<double>(checked));
    }
}

TEST_CASE("explanations csv round-trips") {
    auto dir = testutil::scratch_dir("explain_csv");
    std::vector<LocalExplanation> list(2);
    list[0].project_id = "P1";
    list[0].coefficients.assign(kFeatureCount, 0.5);
    list[0].intercept = 0.25;
    list[0].fidelity = 0.9;
    list[0].n_samples = 100;
    list[0].seed = 12345678901234567ull;
    list[1] = list[0];
    list[1].project_id = "P2";
    list[1].coefficients[3] = -7.5;
    std::string path = (dir / "explanations.csv").string();
    write_explanations_csv(path, list, "test");
    auto parsed = read_explanations_csv(path);
    REQUIRE(parsed.size() == 2);
    CHECK(parsed[0].project_id == "P1");
    CHECK(parsed[1].coefficients[3] == -7.5);
    CHECK(parsed[0].seed == 12345678901234567ull);
}
