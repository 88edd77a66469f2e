// Scratch harness: sweeps synth/explain settings and reports what the
// determinant analysis recovers. Not part of the test suite.
#include <cstdio>
#include <string>

#include "sustain/boosting.hpp"
#include "sustain/determinants.hpp"
#include "sustain/evaluate.hpp"
#include "sustain/explain.hpp"
#include "sustain/metrics.hpp"
#include "sustain/synth.hpp"

using namespace sustain;

int main(int argc, char** argv) {
    std::size_t n_projects = argc > 1 ? std::stoul(argv[1]) : 1000;
    double lin_mix = argc > 2 ? std::stod(argv[2]) : 0.15;
    double width = argc > 3 ? std::stod(argv[3]) : 4.0;
    std::size_t n_samples = argc > 4 ? std::stoul(argv[4]) : 2000;
    int n_trees = argc > 5 ? std::stoi(argv[5]) : 150;
    std::uint64_t seed = argc > 6 ? std::stoull(argv[6]) : 1;

    SynthConfig sc;
    sc.n_projects = n_projects;
    sc.seed = seed;
    sc.lin_mix = lin_mix;
    sc.noise_level = 0.5;
    sc.planted_effects = {{"#cmt_actday", 1.5},     {"#follower_c", 1.5},
                          {"#iss_comment_n", 1.5},  {"iss_open_ratio", 1.5},
                          {"#pro_oneyear_p", 1.5},  {"#line_contributing", 1.5}};
    SynthCorpus corpus = generate(sc);

    std::size_t pos = 0;
    for (int y : corpus.features.labels) pos += static_cast<std::size_t>(y);
    std::printf("corpus: n=%zu pos=%zu\n", corpus.features.n_rows(), pos);

    TrainConfig tc;
    tc.n_trees = n_trees;
    tc.seed = seed;
    BoostedEnsemble model = train(corpus.features, tc);
    std::vector<double> probs = model.predict_proba_all(corpus.features);
    std::printf("train auc: %.3f\n", auc(probs, corpus.features.labels));

    TrainStats stats = TrainStats::compute(corpus.features);
    ExplainConfig ec;
    ec.n_samples = n_samples;
    ec.kernel_width = width;
    ec.ridge_alpha = 1.0;
    PredictFn fn = [&](std::span<const double> row) { return model.predict_proba(row); };
    auto explanations = explain_corpus(fn, corpus.features, stats, ec, seed + 999);

    DeterminantTable table = build_determinant_table(corpus.features, explanations);
    std::printf("n_tests=%d\n", table.n_tests);
    auto show = [&](const char* tag, const std::string& name) {
        const DeterminantRecord* rec = nullptr;
        for (const auto& r : table.records)
            if (r.variable == name) rec = &r;
        std::printf("%s %-20s n=(%5zu,%5zu,z%4zu) med=(%8.2f,%8.2f) r=%.3f %s/%s sig=%d%s\n",
                    tag, name.c_str(), rec->n_neg, rec->n_pos, rec->n_zero, rec->median_neg,
                    rec->median_pos, rec->r, to_string(rec->direction),
                    to_string(rec->magnitude), rec->significant ? 1 : 0,
                    rec->empty_group ? " EMPTY" : "");
    };
    for (const auto& [name, _] : sc.planted_effects) show("PLANT", name);
    for (const char* name : {"#line_readme", "#GFI", "#org_c", "#star", "#cmt_comment_p"})
        show("noise", name);
    return 0;
}
