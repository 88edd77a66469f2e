#ifndef SUSTAIN_DATASET_HPP
#define SUSTAIN_DATASET_HPP

#include <span>
#include <string>
#include <vector>

#include "sustain/feature_names.hpp"
#include "sustain/features.hpp"

namespace sustain {

// Row-major design matrix with labels; columns default to the canonical
// 64-variable layout but ablations carry subsets.
struct Dataset {
    std::vector<std::string> project_ids;
    std::size_t n_cols = kFeatureCount;
    std::vector<double> x;
    std::vector<int> labels;

    std::size_t n_rows() const { return labels.size(); }
    double at(std::size_t i, std::size_t j) const { return x[i * n_cols + j]; }
    std::span<const double> row(std::size_t i) const {
        return {x.data() + i * n_cols, n_cols};
    }
    void add_row(const std::string& id, std::span<const double> values, int label);
};

Dataset select_columns(const Dataset& data, const std::vector<int>& cols);

void write_features_csv(const std::string& path, const Dataset& data,
                        const std::string& provenance_params);
Dataset read_features_csv(const std::string& path);

}  // namespace sustain

#endif
