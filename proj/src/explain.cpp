#include "sustain/explain.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Dense>

#include "sustain/common.hpp"
#include "sustain/csv.hpp"
#include "sustain/errors.hpp"

namespace sustain {

namespace {

// Linear-interpolation percentile on a sorted vector.
double percentile_sorted(const std::vector<double>& sorted, double q) {
    if (sorted.empty()) return 0.0;
    double h = q * static_cast<double>(sorted.size() - 1);
    auto lo = static_cast<std::size_t>(std::floor(h));
    auto hi = std::min(lo + 1, sorted.size() - 1);
    double frac = h - std::floor(h);
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

}  // namespace

TrainStats TrainStats::compute(const Dataset& data) {
    if (data.n_rows() == 0) throw EmptyCorpus("cannot compute training stats of nothing");
    TrainStats stats;
    stats.per_feature.resize(data.n_cols);
    std::vector<double> col(data.n_rows());
    for (std::size_t j = 0; j < data.n_cols; ++j) {
        for (std::size_t i = 0; i < data.n_rows(); ++i) col[i] = data.at(i, j);
        std::sort(col.begin(), col.end());
        FeatureStats& f = stats.per_feature[j];
        f.min = col.front();
        f.max = col.back();
        f.q1 = percentile_sorted(col, 0.25);
        f.q2 = percentile_sorted(col, 0.50);
        f.q3 = percentile_sorted(col, 0.75);
        double sum = 0.0;
        for (double v : col) sum += v;
        f.mean = sum / static_cast<double>(col.size());
        double ss = 0.0;
        for (double v : col) ss += (v - f.mean) * (v - f.mean);
        f.std_dev = std::sqrt(ss / static_cast<double>(col.size()));
        f.constant = f.min == f.max;
        f.binary = !f.constant && std::all_of(col.begin(), col.end(), [](double v) {
            return v == 0.0 || v == 1.0;
        });
    }
    return stats;
}

double TrainStats::standardize(std::size_t feature, double value) const {
    const FeatureStats& f = per_feature[feature];
    return f.std_dev > 0.0 ? (value - f.mean) / f.std_dev : 0.0;
}

Perturbation perturb(std::span<const double> instance, const TrainStats& stats,
                     std::size_t n_samples, std::uint64_t seed) {
    const std::size_t p = instance.size();
    if (stats.per_feature.size() != p)
        throw DimensionMismatch("training stats cover " +
                                std::to_string(stats.per_feature.size()) + " features, instance has " +
                                std::to_string(p));
    Perturbation out;
    out.n_samples = n_samples;
    out.n_features = p;
    out.raw.resize(n_samples * p);
    out.standardized.resize(n_samples * p);
    out.distance.resize(n_samples);

    std::vector<double> inst_z(p);
    for (std::size_t j = 0; j < p; ++j) inst_z[j] = stats.standardize(j, instance[j]);

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> bin_dist(0, 3);
    std::uniform_int_distribution<int> coin(0, 1);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    for (std::size_t s = 0; s < n_samples; ++s) {
        double d2 = 0.0;
        for (std::size_t j = 0; j < p; ++j) {
            const FeatureStats& f = stats.per_feature[j];
            double v;
            if (f.constant) {
                v = instance[j];
            } else if (f.binary) {
                v = static_cast<double>(coin(rng));
            } else {
                int bin = bin_dist(rng);
                double edges[5] = {f.min, f.q1, f.q2, f.q3, f.max};
                double lo = edges[bin], hi = edges[bin + 1];
                v = lo + unit(rng) * (hi - lo);
            }
            out.raw[s * p + j] = v;
            double z = stats.standardize(j, v);
            out.standardized[s * p + j] = z;
            d2 += (z - inst_z[j]) * (z - inst_z[j]);
        }
        out.distance[s] = std::sqrt(d2);
    }
    return out;
}

double kernel_weight(double distance, double width) {
    if (!(width > 0.0)) throw NonpositiveWidth("kernel width must be positive");
    return std::exp(-(distance * distance) / (width * width));
}

RidgeFit fit_local_linear(std::size_t n, std::size_t p, const std::vector<double>& design,
                          const std::vector<double>& outputs,
                          const std::vector<double>& weights, double ridge_alpha) {
    if (design.size() != n * p) throw DimensionMismatch("design size != n*p");
    if (outputs.size() != n || weights.size() != n)
        throw DimensionMismatch("outputs/weights length != n");
    if (n < p + 1)
        throw TooFewSamples("need at least " + std::to_string(p + 1) + " samples, got " +
                            std::to_string(n));
    if (ridge_alpha < 0.0) throw InvalidConfig("ridge_alpha must be >= 0");
    double wsum = 0.0;
    for (double w : weights) {
        if (w < 0.0) throw InvalidConfig("weights must be >= 0");
        wsum += w;
    }
    if (wsum <= 0.0) throw InvalidConfig("weights must not all be zero");
    // Mean-one normalization keeps the solution invariant to a common
    // weight scale (the penalty would otherwise change relative size).
    const double wscale = static_cast<double>(n) / wsum;

    const auto pn = static_cast<Eigen::Index>(p);
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(pn + 1, pn + 1);
    Eigen::VectorXd b = Eigen::VectorXd::Zero(pn + 1);
    Eigen::VectorXd row(pn + 1);
    for (std::size_t i = 0; i < n; ++i) {
        double w = weights[i] * wscale;
        if (w == 0.0) continue;
        for (std::size_t j = 0; j < p; ++j)
            row(static_cast<Eigen::Index>(j)) = design[i * p + j];
        row(pn) = 1.0;
        m.selfadjointView<Eigen::Lower>().rankUpdate(row, w);
        b += w * outputs[i] * row;
    }
    m = m.selfadjointView<Eigen::Lower>();
    m.topLeftCorner(pn, pn).diagonal().array() += ridge_alpha;

    if (ridge_alpha == 0.0) {
        // The normal equations are always consistent, so a rank check is
        // the only way to reject an under-determined design.
        Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
        if (lu.rank() < pn + 1) throw RankDeficient("singular design with ridge_alpha = 0");
    }
    Eigen::VectorXd beta = m.ldlt().solve(b);
    // One refinement step, then verify the residual tolerance.
    beta += m.ldlt().solve(b - m * beta);
    double rel_residual = (m * beta - b).norm() / std::max(1.0, b.norm());
    if (!beta.allFinite() || rel_residual > 1e-8) {
        if (ridge_alpha == 0.0) throw RankDeficient("singular design with ridge_alpha = 0");
        throw Error("ridge solve failed to reach residual tolerance");
    }

    RidgeFit fit;
    fit.coefficients.resize(p);
    for (std::size_t j = 0; j < p; ++j)
        fit.coefficients[j] = beta(static_cast<Eigen::Index>(j));
    fit.intercept = beta(pn);

    double y_mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) y_mean += weights[i] * wscale * outputs[i];
    y_mean /= static_cast<double>(n);
    double ss_res = 0.0, ss_tot = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double w = weights[i] * wscale;
        double yhat = fit.intercept;
        for (std::size_t j = 0; j < p; ++j) yhat += fit.coefficients[j] * design[i * p + j];
        ss_res += w * (outputs[i] - yhat) * (outputs[i] - yhat);
        ss_tot += w * (outputs[i] - y_mean) * (outputs[i] - y_mean);
    }
    fit.r2 = ss_tot > 1e-15 ? 1.0 - ss_res / ss_tot : (ss_res <= 1e-15 ? 1.0 : 0.0);
    return fit;
}

LocalExplanation explain_instance(const PredictFn& model, std::span<const double> instance,
                                  const TrainStats& stats, const ExplainConfig& config) {
    const std::size_t p = instance.size();
    double width = config.kernel_width > 0.0
                       ? config.kernel_width
                       : 0.75 * std::sqrt(static_cast<double>(p));
    Perturbation nb = perturb(instance, stats, config.n_samples, config.seed);
    std::vector<double> outputs(nb.n_samples), weights(nb.n_samples);
    for (std::size_t i = 0; i < nb.n_samples; ++i) {
        outputs[i] = model(nb.raw_row(i));
        weights[i] = kernel_weight(nb.distance[i], width);
    }
    RidgeFit fit = fit_local_linear(nb.n_samples, p, nb.standardized, outputs, weights,
                                    config.ridge_alpha);
    LocalExplanation ex;
    ex.coefficients = std::move(fit.coefficients);
    ex.intercept = fit.intercept;
    ex.fidelity = fit.r2;
    ex.n_samples = config.n_samples;
    ex.seed = config.seed;
    return ex;
}

std::vector<LocalExplanation> explain_corpus(const PredictFn& model, const Dataset& data,
                                             const TrainStats& stats,
                                             const ExplainConfig& config,
                                             std::uint64_t master_seed) {
    std::vector<LocalExplanation> out(data.n_rows());
    parallel_for(data.n_rows(), [&](std::size_t i) {
        ExplainConfig local = config;
        local.seed = derive_seed(master_seed, data.project_ids[i]);
        out[i] = explain_instance(model, data.row(i), stats, local);
        out[i].project_id = data.project_ids[i];
    });
    return out;
}

void write_explanations_csv(const std::string& path,
                            const std::vector<LocalExplanation>& explanations,
                            const std::string& provenance_params) {
    std::vector<std::string> header{"project_id"};
    for (const std::string& name : feature_names()) header.push_back(name);
    header.push_back("intercept");
    header.push_back("fidelity");
    header.push_back("seed");
    CsvWriter w(path, provenance_line(provenance_params), header);
    std::vector<std::string> row(header.size());
    for (const LocalExplanation& ex : explanations) {
        if (ex.coefficients.size() != kFeatureCount)
            throw DimensionMismatch("explanations.csv requires the canonical 64 coefficients");
        row[0] = ex.project_id;
        for (std::size_t j = 0; j < ex.coefficients.size(); ++j)
            row[j + 1] = format_double(ex.coefficients[j]);
        row[kFeatureCount + 1] = format_double(ex.intercept);
        row[kFeatureCount + 2] = format_double(ex.fidelity);
        row[kFeatureCount + 3] = std::to_string(ex.seed);
        w.write_row(row);
    }
    w.close();
}

std::vector<LocalExplanation> read_explanations_csv(const std::string& path) {
    CsvReader reader(path);
    std::size_t c_pid = reader.require_column("project_id");
    std::vector<std::size_t> cols(kFeatureCount);
    for (int i = 0; i < kFeatureCount; ++i)
        cols[static_cast<std::size_t>(i)] =
            reader.require_column(feature_names()[static_cast<std::size_t>(i)]);
    std::size_t c_intercept = reader.require_column("intercept");
    std::size_t c_fidelity = reader.require_column("fidelity");
    std::size_t c_seed = reader.require_column("seed");

    std::vector<LocalExplanation> out;
    std::vector<std::string> f;
    while (reader.next(f)) {
        std::size_t ln = reader.line_no();
        LocalExplanation ex;
        ex.project_id = f[c_pid];
        ex.coefficients.resize(kFeatureCount);
        for (int i = 0; i < kFeatureCount; ++i)
            ex.coefficients[static_cast<std::size_t>(i)] =
                parse_double_field(f[cols[static_cast<std::size_t>(i)]], ln);
        ex.intercept = parse_double_field(f[c_intercept], ln);
        ex.fidelity = parse_double_field(f[c_fidelity], ln);
        ex.seed = parse_uint64_field(f[c_seed], ln);
        out.push_back(std::move(ex));
    }
    if (out.empty()) throw EmptyInput("no explanation rows in " + path);
    return out;
}

}  // namespace sustain
