#include "sustain/dataset.hpp"

#include "sustain/common.hpp"
#include "sustain/csv.hpp"
#include "sustain/errors.hpp"

namespace sustain {

void Dataset::add_row(const std::string& id, std::span<const double> values, int label) {
    if (values.size() != n_cols)
        throw DimensionMismatch("row width " + std::to_string(values.size()) + " != " +
                                std::to_string(n_cols));
    project_ids.push_back(id);
    x.insert(x.end(), values.begin(), values.end());
    labels.push_back(label);
}

Dataset select_columns(const Dataset& data, const std::vector<int>& cols) {
    Dataset out;
    out.n_cols = cols.size();
    out.project_ids = data.project_ids;
    out.labels = data.labels;
    out.x.reserve(data.n_rows() * cols.size());
    for (std::size_t i = 0; i < data.n_rows(); ++i)
        for (int c : cols) out.x.push_back(data.at(i, static_cast<std::size_t>(c)));
    return out;
}

void write_features_csv(const std::string& path, const Dataset& data,
                        const std::string& provenance_params) {
    if (data.n_cols != kFeatureCount)
        throw DimensionMismatch("features.csv requires the canonical 64 columns");
    std::vector<std::string> header{"project_id"};
    for (const std::string& name : feature_names()) header.push_back(name);
    header.push_back("status");
    CsvWriter w(path, provenance_line(provenance_params), header);
    std::vector<std::string> row(header.size());
    for (std::size_t i = 0; i < data.n_rows(); ++i) {
        row[0] = data.project_ids[i];
        for (std::size_t j = 0; j < data.n_cols; ++j) row[j + 1] = format_double(data.at(i, j));
        row.back() = std::to_string(data.labels[i]);
        w.write_row(row);
    }
    w.close();
}

Dataset read_features_csv(const std::string& path) {
    CsvReader reader(path);
    std::size_t c_pid = reader.require_column("project_id");
    std::size_t c_status = reader.require_column("status");
    std::vector<std::size_t> cols(kFeatureCount);
    for (int i = 0; i < kFeatureCount; ++i)
        cols[static_cast<std::size_t>(i)] =
            reader.require_column(feature_names()[static_cast<std::size_t>(i)]);

    Dataset data;
    std::vector<std::string> f;
    std::vector<double> values(kFeatureCount);
    while (reader.next(f)) {
        std::size_t ln = reader.line_no();
        for (int i = 0; i < kFeatureCount; ++i)
            values[static_cast<std::size_t>(i)] =
                parse_double_field(f[cols[static_cast<std::size_t>(i)]], ln);
        int status = static_cast<int>(parse_int_field(f[c_status], ln));
        if (status != 0 && status != 1) throw MalformedRow(ln, "status must be 0 or 1");
        data.add_row(f[c_pid], values, status);
    }
    if (data.n_rows() == 0) throw EmptyInput("no feature rows in " + path);
    return data;
}

}  // namespace sustain
