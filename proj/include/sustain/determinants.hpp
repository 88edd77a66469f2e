#ifndef SUSTAIN_DETERMINANTS_HPP
#define SUSTAIN_DETERMINANTS_HPP

#include <string>
#include <vector>

#include "sustain/dataset.hpp"
#include "sustain/explain.hpp"
#include "sustain/stats.hpp"

namespace sustain {

struct DeterminantRecord {
    std::string variable;
    std::string definition;
    std::size_t n_neg = 0;
    std::size_t n_pos = 0;
    std::size_t n_zero = 0;  // exact-zero coefficients, excluded from both groups
    double median_neg = 0.0;
    double mean_neg = 0.0;
    double median_pos = 0.0;
    double mean_pos = 0.0;
    double u = 0.0;
    double z = 0.0;
    double p = 1.0;
    double r = 0.0;  // |z| / sqrt(n_neg + n_pos)
    EffectDirection direction = EffectDirection::None;
    EffectMagnitude magnitude = EffectMagnitude::Negligible;
    bool significant = false;
    bool empty_group = false;   // one sign group was empty; tests skipped
    bool small_groups = false;  // min group size < 20, approximation flagged
};

struct GroupSplit {
    std::vector<std::size_t> negative;  // indices into the explanation list
    std::vector<std::size_t> positive;
    std::size_t n_zero = 0;
};

// Strict sign partition of the projects by their local coefficient for
// one variable. Exact zeros land in neither group. Throws EmptyGroup via
// the record flag instead of an exception; callers test empty().
GroupSplit split_groups(const std::vector<LocalExplanation>& explanations, int variable);

struct DeterminantTable {
    std::vector<DeterminantRecord> records;  // one per variable
    int n_tests = 0;                         // variables with both groups non-empty
    double bonferroni_alpha = 0.05;
    std::string stratum = "all";             // all / org-owned / user-owned
};

// The full determinant analysis: per variable, split by coefficient sign,
// compare the variable's raw values between the groups with the
// Mann-Whitney U test, Bonferroni-correct over the testable variables,
// and classify direction/magnitude.
DeterminantTable build_determinant_table(const Dataset& features,
                                         const std::vector<LocalExplanation>& explanations,
                                         double alpha = 0.05);

// The owner-type-stratified variant: the corpus split by the `type`
// variable, each stratum analyzed independently.
std::vector<DeterminantTable> build_stratified_tables(
    const Dataset& features, const std::vector<LocalExplanation>& explanations,
    double alpha = 0.05);

void write_determinants_csv(const std::string& path, const DeterminantTable& table,
                            const std::string& provenance_params);

}  // namespace sustain

#endif
