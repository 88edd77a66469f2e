#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sustain/errors.hpp"
#include "sustain/pipeline.hpp"

namespace sustain {

namespace {

struct CliOverrides {
    std::optional<std::string> config_path;
    std::optional<std::string> events, projects, profiles, out;
    std::optional<int> m, t, k, folds;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> dimension;
    std::optional<std::size_t> n_samples;
    std::optional<std::size_t> n_projects;
    bool grid = false;
};

void add_common_options(CLI::App* cmd, CliOverrides& ov) {
    cmd->add_option("--config", ov.config_path, "configuration file");
    cmd->add_option("--events", ov.events, "events.csv (or .jsonl) path");
    cmd->add_option("--projects", ov.projects, "projects.csv path");
    cmd->add_option("--profiles", ov.profiles, "profiles.csv path");
    cmd->add_option("--out", ov.out, "output directory");
    cmd->add_option("--m", ov.m, "observation window in months");
    cmd->add_option("--t", ov.t, "sustained-activity horizon in years");
    cmd->add_option("--k", ov.k, "median monthly commit threshold");
    cmd->add_option("--seed", ov.seed, "master seed");
    cmd->add_option("--folds", ov.folds, "cross-validation folds");
    cmd->add_option("--dimension", ov.dimension, "variable dimension for evaluate");
    cmd->add_option("--n-samples", ov.n_samples, "perturbation samples per explanation");
    cmd->add_option("--n-projects", ov.n_projects, "synthetic corpus size");
}

PipelineConfig build_config(const CliOverrides& ov) {
    ConfigMap map;
    if (ov.config_path) map = ConfigMap::load(*ov.config_path);
    PipelineConfig config = PipelineConfig::from_map(map);
    if (ov.events) config.events_path = *ov.events;
    if (ov.projects) config.projects_path = *ov.projects;
    if (ov.profiles) config.profiles_path = *ov.profiles;
    if (ov.out) config.out_dir = *ov.out;
    if (ov.m) config.m = *ov.m;
    if (ov.t) config.t = *ov.t;
    if (ov.k) config.k = *ov.k;
    if (ov.folds) config.folds = *ov.folds;
    if (ov.seed) {
        config.seed = *ov.seed;
        config.synth.seed = *ov.seed;
    }
    if (ov.n_samples) config.explain.n_samples = *ov.n_samples;
    if (ov.n_projects) config.synth.n_projects = *ov.n_projects;
    if (ov.m) config.synth.observation_months = *ov.m;
    if (ov.t) config.synth.sustain_t_years = *ov.t;
    if (ov.k) config.synth.sustain_k = *ov.k;
    config.validate();
    return config;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"early-participation sustained-activity pipeline"};
    app.require_subcommand(1);

    CliOverrides ov;
    std::string stage_name;
    for (const char* name : {"synth", "select", "label", "featurize", "train", "evaluate",
                             "explain", "analyze", "report"}) {
        CLI::App* cmd = app.add_subcommand(name);
        add_common_options(cmd, ov);
        if (std::string(name) == "evaluate")
            cmd->add_flag("--grid", ov.grid, "emit the (m,t,k) evaluation grid");
        cmd->callback([&stage_name, name] { stage_name = name; });
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        // CLI11 prints its own message through exit().
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        PipelineConfig config = build_config(ov);
        if (stage_name == "synth") stage_synth(config);
        else if (stage_name == "select") stage_select(config);
        else if (stage_name == "label") stage_label(config);
        else if (stage_name == "featurize") stage_featurize(config);
        else if (stage_name == "train") stage_train(config);
        else if (stage_name == "evaluate")
            stage_evaluate(config, ov.dimension.value_or(""), ov.grid);
        else if (stage_name == "explain") stage_explain(config);
        else if (stage_name == "analyze") stage_analyze(config);
        else if (stage_name == "report") stage_report(config);
        return 0;
    } catch (const IoError& e) {
        std::cerr << "[" << stage_name << "] i/o error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "[" << stage_name << "] error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "[" << stage_name << "] error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace sustain
