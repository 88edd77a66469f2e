#include "sustain/determinants.hpp"

#include <cmath>
#include <map>

#include "sustain/common.hpp"
#include "sustain/csv.hpp"
#include "sustain/errors.hpp"

namespace sustain {

GroupSplit split_groups(const std::vector<LocalExplanation>& explanations, int variable) {
    if (explanations.size() < 2)
        throw TooFewSamples("group split needs explanations for at least 2 projects");
    GroupSplit split;
    for (std::size_t i = 0; i < explanations.size(); ++i) {
        double c = explanations[i].coefficients[static_cast<std::size_t>(variable)];
        if (c > 0.0)
            split.positive.push_back(i);
        else if (c < 0.0)
            split.negative.push_back(i);
        else
            ++split.n_zero;
    }
    return split;
}

namespace {

DeterminantTable analyze(const Dataset& features,
                         const std::vector<LocalExplanation>& explanations,
                         const std::vector<std::size_t>& rows, double alpha,
                         const std::string& stratum) {
    DeterminantTable table;
    table.bonferroni_alpha = alpha;
    table.stratum = stratum;

    std::vector<LocalExplanation> subset;
    subset.reserve(rows.size());
    for (std::size_t i : rows) subset.push_back(explanations[i]);

    table.records.resize(kFeatureCount);
    for (int v = 0; v < kFeatureCount; ++v) {
        DeterminantRecord& rec = table.records[static_cast<std::size_t>(v)];
        rec.variable = feature_names()[static_cast<std::size_t>(v)];
        rec.definition = feature_definitions()[static_cast<std::size_t>(v)];
        GroupSplit split = split_groups(subset, v);
        rec.n_neg = split.negative.size();
        rec.n_pos = split.positive.size();
        rec.n_zero = split.n_zero;
        if (split.negative.empty() || split.positive.empty()) {
            rec.empty_group = true;
            continue;
        }
        auto values_of = [&](const std::vector<std::size_t>& group) {
            std::vector<double> out;
            out.reserve(group.size());
            for (std::size_t g : group)
                out.push_back(features.at(rows[g], static_cast<std::size_t>(v)));
            return out;
        };
        std::vector<double> neg_values = values_of(split.negative);
        std::vector<double> pos_values = values_of(split.positive);
        rec.median_neg = median(neg_values);
        rec.mean_neg = mean(neg_values);
        rec.median_pos = median(pos_values);
        rec.mean_pos = mean(pos_values);
        MannWhitneyResult mw = mann_whitney_u(neg_values, pos_values);
        rec.u = mw.u;
        rec.z = mw.z;
        rec.p = mw.p;
        rec.r = std::abs(mw.z) /
                std::sqrt(static_cast<double>(rec.n_neg + rec.n_pos));
        EffectClass effect = classify_effect(rec.median_neg, rec.median_pos, rec.r);
        rec.direction = effect.direction;
        rec.magnitude = effect.magnitude;
        rec.small_groups = std::min(rec.n_neg, rec.n_pos) < 20;
        ++table.n_tests;
    }
    for (DeterminantRecord& rec : table.records) {
        if (!rec.empty_group && table.n_tests > 0)
            rec.significant = bonferroni_significant(rec.p, table.n_tests, alpha);
    }
    return table;
}

std::vector<std::size_t> matching_rows(const Dataset& features,
                                       const std::vector<LocalExplanation>& explanations) {
    // Explanations must align with feature rows by project id.
    std::map<std::string, std::size_t> by_id;
    for (std::size_t i = 0; i < features.n_rows(); ++i) by_id[features.project_ids[i]] = i;
    std::vector<std::size_t> rows;
    rows.reserve(explanations.size());
    for (const LocalExplanation& ex : explanations) {
        auto it = by_id.find(ex.project_id);
        if (it == by_id.end())
            throw Error("explanation for unknown project " + ex.project_id);
        rows.push_back(it->second);
    }
    return rows;
}

}  // namespace

DeterminantTable build_determinant_table(const Dataset& features,
                                         const std::vector<LocalExplanation>& explanations,
                                         double alpha) {
    if (features.n_cols != kFeatureCount)
        throw DimensionMismatch("determinant analysis expects the canonical 64 columns");
    std::vector<std::size_t> feature_rows = matching_rows(features, explanations);
    return analyze(features, explanations, feature_rows, alpha, "all");
}

std::vector<DeterminantTable> build_stratified_tables(
    const Dataset& features, const std::vector<LocalExplanation>& explanations, double alpha) {
    if (features.n_cols != kFeatureCount)
        throw DimensionMismatch("determinant analysis expects the canonical 64 columns");
    std::vector<std::size_t> feature_rows = matching_rows(features, explanations);

    std::vector<std::size_t> org_rows, user_rows;
    std::vector<LocalExplanation> org_ex, user_ex;
    for (std::size_t i = 0; i < explanations.size(); ++i) {
        double type_value = features.at(feature_rows[i], feat::type);
        if (type_value == 0.0) {
            org_rows.push_back(feature_rows[i]);
            org_ex.push_back(explanations[i]);
        } else {
            user_rows.push_back(feature_rows[i]);
            user_ex.push_back(explanations[i]);
        }
    }
    std::vector<DeterminantTable> out;
    if (org_ex.size() >= 2) out.push_back(analyze(features, org_ex, org_rows, alpha, "org"));
    if (user_ex.size() >= 2) out.push_back(analyze(features, user_ex, user_rows, alpha, "user"));
    return out;
}

void write_determinants_csv(const std::string& path, const DeterminantTable& table,
                            const std::string& provenance_params) {
    CsvWriter w(path,
                provenance_line(provenance_params + " stratum=" + table.stratum +
                                " n_tests=" + std::to_string(table.n_tests) +
                                " bonferroni_threshold=" +
                                format_double(bonferroni_threshold(
                                    std::max(table.n_tests, 1), table.bonferroni_alpha))),
                {"variable", "definition", "n_neg", "n_pos", "n_zero", "median_neg", "mean_neg",
                 "median_pos", "mean_pos", "U", "z", "p", "r", "direction", "magnitude",
                 "significant", "empty_group", "small_groups"});
    for (const DeterminantRecord& rec : table.records) {
        w.write_row({rec.variable, rec.definition, std::to_string(rec.n_neg),
                     std::to_string(rec.n_pos), std::to_string(rec.n_zero),
                     format_double(rec.median_neg), format_double(rec.mean_neg),
                     format_double(rec.median_pos), format_double(rec.mean_pos),
                     format_double(rec.u), format_double(rec.z), format_double(rec.p),
                     format_double(rec.r), to_string(rec.direction), to_string(rec.magnitude),
                     rec.significant ? "1" : "0", rec.empty_group ? "1" : "0",
                     rec.small_groups ? "1" : "0"});
    }
    w.close();
}

}  // namespace sustain
