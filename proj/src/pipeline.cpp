#include "sustain/pipeline.hpp"

#include <algorithm>
#include <array>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>

#include "sustain/common.hpp"
#include "sustain/csv.hpp"
#include "sustain/dataset.hpp"
#include "sustain/determinants.hpp"
#include "sustain/errors.hpp"
#include "sustain/evaluate.hpp"
#include "sustain/ingest.hpp"
#include "sustain/metrics.hpp"

namespace sustain {

namespace {

std::string params_of(const PipelineConfig& c, const std::string& stage) {
    return "stage=" + stage + " m=" + std::to_string(c.m) + " t=" + std::to_string(c.t) +
           " k=" + std::to_string(c.k) + " seed=" + std::to_string(c.seed);
}

std::vector<ProjectEventLog> load_corpus(const PipelineConfig& c) {
    if (c.events_path.empty()) throw InvalidConfig("no events path configured");
    LogFormat format = c.events_path.size() > 6 &&
                               c.events_path.substr(c.events_path.size() - 6) == ".jsonl"
                           ? LogFormat::Jsonl
                           : LogFormat::Csv;
    std::vector<ProjectEventLog> corpus = parse_event_log(c.events_path, format);
    if (!c.projects_path.empty())
        attach_project_info(corpus, parse_projects(c.projects_path));
    return corpus;
}

// Restricts the corpus to the ids in out/selected.csv when the select
// stage has run.
void apply_selection_file(const PipelineConfig& c, std::vector<ProjectEventLog>& corpus) {
    std::string path = c.out_dir + "/selected.csv";
    if (!std::filesystem::exists(path)) return;
    CsvReader reader(path);
    std::size_t c_pid = reader.require_column("project_id");
    std::set<std::string> keep;
    std::vector<std::string> f;
    while (reader.next(f)) keep.insert(f[c_pid]);
    std::erase_if(corpus,
                  [&](const ProjectEventLog& log) { return keep.count(log.project_id) == 0; });
}

SelectionThresholds resolve_thresholds(const PipelineConfig& c,
                                       const std::vector<ProjectEventLog>& corpus) {
    switch (c.select_mode) {
        case SelectMode::Percentile: {
            SelectionThresholds t = compute_percentile_thresholds(corpus, c.percentile);
            t.min_span_days = c.thresholds.min_span_days;
            t.created_after = c.thresholds.created_after;
            t.created_before = c.thresholds.created_before;
            return t;
        }
        case SelectMode::Explicit:
            return c.thresholds;
        case SelectMode::None: {
            SelectionThresholds t;
            t.created_after = c.thresholds.created_after;
            t.created_before = c.thresholds.created_before;
            return t;
        }
    }
    return {};
}

Dataset featurize_corpus(const PipelineConfig& c, const std::vector<ProjectEventLog>& corpus,
                         const ProfileMap& profiles,
                         const std::vector<std::pair<std::string, SustainedLabel>>& labels,
                         std::vector<std::pair<std::string, RoleAssignment>>* roles_out) {
    std::map<std::string, int> status;
    for (const auto& [pid, label] : labels) status[pid] = label.status;

    Dataset data;
    std::vector<FeatureVector> vectors(corpus.size());
    std::vector<RoleAssignment> roles(corpus.size());
    std::vector<char> keep(corpus.size(), 0);
    parallel_for(corpus.size(), [&](std::size_t i) {
        const ProjectEventLog& log = corpus[i];
        if (!status.count(log.project_id) || !log.has_commits) return;
        ProjectEventLog window = filter_bots(window_events(log, c.m), c.roles);
        if (window.events.empty()) return;
        roles[i] = assign_roles(window, c.roles);
        vectors[i] = extract_all(window, roles[i], profiles, log.info, c.features);
        keep[i] = 1;
    });
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        if (!keep[i]) continue;
        data.add_row(corpus[i].project_id, vectors[i].values, status[corpus[i].project_id]);
        if (roles_out) roles_out->emplace_back(corpus[i].project_id, roles[i]);
    }
    if (data.n_rows() == 0) throw EmptyCorpus("no projects survived featurization");
    return data;
}

}  // namespace

void stage_synth(const PipelineConfig& config) {
    SynthCorpus corpus = generate(config.synth);
    write_synth_corpus(corpus, config.synth, config.out_dir);
    std::size_t positives = 0;
    for (int y : corpus.features.labels) positives += static_cast<std::size_t>(y);
    std::cout << "synth: " << corpus.logs.size() << " projects, " << positives
              << " sustained, outputs in " << config.out_dir << "\n";
}

void stage_select(const PipelineConfig& config) {
    std::vector<ProjectEventLog> corpus = load_corpus(config);
    SelectionThresholds t = resolve_thresholds(config, corpus);
    std::vector<ProjectEventLog> selected = select_projects(corpus, t);
    std::filesystem::create_directories(config.out_dir);
    std::string provenance =
        params_of(config, "select") + " thresholds=" + std::to_string(t.min_commits) + "/" +
        std::to_string(t.min_prs) + "/" + std::to_string(t.min_issues) + "/" +
        std::to_string(t.min_forks) + "/" + std::to_string(t.min_stars) +
        " min_span_days=" + std::to_string(t.min_span_days);
    CsvWriter w(config.out_dir + "/selected.csv", provenance_line(provenance),
                {"project_id", "commits", "prs", "issues", "forks", "stars", "span_days"});
    for (const ProjectEventLog& log : selected) {
        ProjectMetrics metrics = lifetime_metrics(log);
        w.write_row({log.project_id, std::to_string(metrics.commits), std::to_string(metrics.prs),
                     std::to_string(metrics.issues), std::to_string(metrics.forks),
                     std::to_string(metrics.stars), format_double(metrics.span_days)});
    }
    w.close();
    std::cout << "select: kept " << selected.size() << " of " << corpus.size() << " projects\n";
}

void stage_label(const PipelineConfig& config) {
    std::vector<ProjectEventLog> corpus = load_corpus(config);
    apply_selection_file(config, corpus);
    std::vector<std::pair<std::string, SustainedLabel>> labels;
    std::size_t skipped = 0;
    for (const ProjectEventLog& log : corpus) {
        if (!log.has_commits) {
            ++skipped;
            continue;
        }
        labels.emplace_back(log.project_id,
                            label_sustained(log, config.t, config.k, config.label));
    }
    if (labels.empty()) throw EmptyCorpus("no labelable projects");
    std::filesystem::create_directories(config.out_dir);
    write_labels_csv(config.out_dir + "/labels.csv", labels, params_of(config, "label"));
    std::size_t positives = 0;
    for (const auto& [_, l] : labels) positives += static_cast<std::size_t>(l.status);
    std::cout << "label: " << labels.size() << " projects (" << positives << " sustained";
    if (skipped > 0) std::cout << ", " << skipped << " without commits skipped";
    std::cout << ")\n";
}

void stage_featurize(const PipelineConfig& config) {
    std::vector<ProjectEventLog> corpus = load_corpus(config);
    apply_selection_file(config, corpus);
    if (config.profiles_path.empty()) throw InvalidConfig("no profiles path configured");
    ProfileMap profiles = parse_profiles(config.profiles_path);
    auto labels = read_labels_csv(config.out_dir + "/labels.csv");
    std::vector<std::pair<std::string, RoleAssignment>> roles;
    Dataset data = featurize_corpus(config, corpus, profiles, labels, &roles);
    write_features_csv(config.out_dir + "/features.csv", data, params_of(config, "featurize"));
    write_roles_csv(config.out_dir + "/roles.csv", roles, params_of(config, "featurize"));
    std::cout << "featurize: " << data.n_rows() << " projects x " << data.n_cols
              << " variables\n";
}

void stage_train(const PipelineConfig& config) {
    Dataset data = read_features_csv(config.out_dir + "/features.csv");
    TrainConfig tc = config.train;
    tc.seed = config.seed;
    BoostedEnsemble model = train(data, tc);
    model.save(config.out_dir + "/model.json");
    std::vector<double> probs = model.predict_proba_all(data);
    std::cout << "train: " << tc.n_trees << " trees, training auc "
              << format_double(auc(probs, data.labels)) << ", log-loss "
              << format_double(log_loss(probs, data.labels)) << "\n";
}

void stage_evaluate(const PipelineConfig& config, const std::string& dimension, bool grid) {
    TrainConfig tc = config.train;
    tc.seed = config.seed;
    std::vector<EvalReport> reports;
    if (grid) {
        // The (m, t, k) grid: relabel and refeaturize per cell.
        std::vector<ProjectEventLog> corpus = load_corpus(config);
        apply_selection_file(config, corpus);
        ProfileMap profiles = parse_profiles(config.profiles_path);
        for (int m : {1, 3, 5}) {
            for (int t : {1, 2}) {
                for (int k : {1, 2, 6}) {
                    PipelineConfig cell = config;
                    cell.m = m;
                    cell.t = t;
                    cell.k = k;
                    std::vector<std::pair<std::string, SustainedLabel>> labels;
                    for (const ProjectEventLog& log : corpus) {
                        if (!log.has_commits) continue;
                        labels.emplace_back(log.project_id,
                                            label_sustained(log, t, k, config.label));
                    }
                    Dataset data = featurize_corpus(cell, corpus, profiles, labels, nullptr);
                    EvalReport report = kfold_cv(data, boosted_trainer(tc), config.folds,
                                                 config.seed);
                    report.m = m;
                    report.t = t;
                    report.k = k;
                    reports.push_back(report);
                }
            }
        }
        write_eval_csv(config.out_dir + "/eval_grid.csv", reports,
                       params_of(config, "evaluate-grid"));
        std::cout << "evaluate: grid of " << reports.size() << " (m,t,k) cells\n";
        return;
    }

    Dataset data = read_features_csv(config.out_dir + "/features.csv");
    auto finish = [&](EvalReport report, const std::string& model_name) {
        report.m = config.m;
        report.t = config.t;
        report.k = config.k;
        report.model_name = model_name;
        reports.push_back(std::move(report));
    };
    if (!dimension.empty() && dimension != "all") {
        finish(ablation_run(data, parse_dimension(dimension), tc, config.folds, config.seed),
               "gbt");
    } else {
        finish(kfold_cv(data, boosted_trainer(tc), config.folds, config.seed), "gbt");
        finish(train_baseline_logreg(data, config.folds, config.seed).report, "logreg");
        for (Dimension d :
             {Dimension::Common, Dimension::Other, Dimension::CumulativeEffort,
              Dimension::Stability, Dimension::Concentration, Dimension::OssExperience,
              Dimension::Popularity, Dimension::Opportunity, Dimension::Controls}) {
            finish(ablation_run(data, d, tc, config.folds, config.seed), "gbt");
        }
    }
    write_eval_csv(config.out_dir + "/eval.csv", reports, params_of(config, "evaluate"));
    for (const EvalReport& r : reports) {
        std::cout << "evaluate: " << r.model_name << "/" << r.dimension << " auc "
                  << format_double(r.auc) << " precision " << format_double(r.precision)
                  << " recall " << format_double(r.recall) << "\n";
    }
}

void stage_explain(const PipelineConfig& config) {
    Dataset data = read_features_csv(config.out_dir + "/features.csv");
    BoostedEnsemble model = BoostedEnsemble::load(config.out_dir + "/model.json");
    TrainStats stats = TrainStats::compute(data);
    PredictFn predict = [&model](std::span<const double> row) {
        return model.predict_proba(row);
    };
    std::vector<LocalExplanation> explanations =
        explain_corpus(predict, data, stats, config.explain, config.seed);
    write_explanations_csv(config.out_dir + "/explanations.csv", explanations,
                           params_of(config, "explain") + " n_samples=" +
                               std::to_string(config.explain.n_samples));
    double mean_fidelity = 0.0;
    for (const LocalExplanation& ex : explanations) mean_fidelity += ex.fidelity;
    mean_fidelity /= static_cast<double>(explanations.size());
    std::cout << "explain: " << explanations.size() << " projects, mean fidelity "
              << format_double(mean_fidelity) << "\n";
}

void stage_analyze(const PipelineConfig& config) {
    Dataset data = read_features_csv(config.out_dir + "/features.csv");
    std::vector<LocalExplanation> explanations =
        read_explanations_csv(config.out_dir + "/explanations.csv");
    DeterminantTable table = build_determinant_table(data, explanations);
    write_determinants_csv(config.out_dir + "/determinants.csv", table,
                           params_of(config, "analyze"));
    for (const DeterminantTable& stratum : build_stratified_tables(data, explanations)) {
        write_determinants_csv(config.out_dir + "/determinants_" + stratum.stratum + ".csv",
                               stratum, params_of(config, "analyze"));
    }
    std::size_t significant = 0;
    for (const DeterminantRecord& rec : table.records)
        significant += rec.significant ? 1 : 0;
    std::cout << "analyze: " << table.n_tests << " testable variables, " << significant
              << " significant at bonferroni threshold "
              << format_double(bonferroni_threshold(std::max(table.n_tests, 1))) << "\n";
}

void stage_report(const PipelineConfig& config) {
    std::string path = config.out_dir + "/report.txt";
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);

    out << "sustain " << kToolVersion << " report (m=" << config.m << " t=" << config.t
        << " k=" << config.k << " seed=" << config.seed << ")\n\n";
    out << "constants\n";
    out << "  bonferroni threshold (" << kFeatureCount
        << " tests): " << format_double(bonferroni_threshold(kFeatureCount)) << "\n";
    out << "  effect size boundaries: small >= " << format_double(kEffectSmall)
        << ", medium >= " << format_double(kEffectMedium)
        << ", large >= " << format_double(kEffectLarge) << "\n";
    SelectionThresholds ref = SelectionThresholds::reference();
    out << "  reference selection thresholds: " << ref.min_commits << "/" << ref.min_prs << "/"
        << ref.min_issues << "/" << ref.min_forks << "/" << ref.min_stars << " (span "
        << ref.min_span_days << "d)\n\n";

    std::string grid_path = config.out_dir + "/eval_grid.csv";
    if (std::filesystem::exists(grid_path)) {
        out << "evaluation grid (auc/precision/recall)\n";
        CsvReader reader(grid_path);
        std::size_t c_m = reader.require_column("m"), c_t = reader.require_column("t"),
                    c_k = reader.require_column("k"), c_auc = reader.require_column("auc"),
                    c_p = reader.require_column("precision"),
                    c_r = reader.require_column("recall");
        std::vector<std::string> f;
        while (reader.next(f)) {
            out << "  m=" << f[c_m] << " t=" << f[c_t] << " k=" << f[c_k] << "  " << f[c_auc]
                << " / " << f[c_p] << " / " << f[c_r] << "\n";
        }
        out << "\n";
    }

    std::string det_path = config.out_dir + "/determinants.csv";
    if (std::filesystem::exists(det_path)) {
        out << "determinants (significant, by effect size)\n";
        CsvReader reader(det_path);
        std::size_t c_var = reader.require_column("variable"),
                    c_r = reader.require_column("r"),
                    c_dir = reader.require_column("direction"),
                    c_mag = reader.require_column("magnitude"),
                    c_sig = reader.require_column("significant");
        std::vector<std::array<std::string, 4>> rows;
        std::vector<std::string> f;
        while (reader.next(f)) {
            if (f[c_sig] != "1") continue;
            rows.push_back({f[c_var], f[c_r], f[c_dir], f[c_mag]});
        }
        std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
            return std::stod(a[1]) > std::stod(b[1]);
        });
        for (const auto& row : rows)
            out << "  " << row[0] << "  r=" << row[1] << "  " << row[2] << "/" << row[3] << "\n";
        out << "\n";
    }
    out.close();
    std::cout << "report: wrote " << path << "\n";
}

}  // namespace sustain
