#include "sustain/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>

#include "sustain/errors.hpp"

namespace sustain {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

}  // namespace

ConfigMap ConfigMap::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file " + path);
    ConfigMap map;
    std::string line, section;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string s = trim(line);
        if (s.empty() || s[0] == '#' || s[0] == ';') continue;
        if (s.front() == '[') {
            if (s.back() != ']')
                throw MalformedRow(line_no, "unterminated section header in " + path);
            section = trim(s.substr(1, s.size() - 2));
            continue;
        }
        std::size_t eq = s.find('=');
        if (eq == std::string::npos)
            throw MalformedRow(line_no, "expected key = value in " + path);
        std::string key = trim(s.substr(0, eq));
        std::string value = trim(s.substr(eq + 1));
        if (key.empty()) throw MalformedRow(line_no, "empty key in " + path);
        map.set(section.empty() ? key : section + "." + key, value);
    }
    return map;
}

std::string ConfigMap::get_string(const std::string& key, const std::string& fallback) const {
    auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
}

std::int64_t ConfigMap::get_int(const std::string& key, std::int64_t fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    try {
        return std::stoll(it->second);
    } catch (const std::exception&) {
        throw InvalidConfig("config key " + key + " is not an integer: " + it->second);
    }
}

std::uint64_t ConfigMap::get_uint(const std::string& key, std::uint64_t fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    try {
        return std::stoull(it->second);
    } catch (const std::exception&) {
        throw InvalidConfig("config key " + key + " is not an unsigned integer: " + it->second);
    }
}

double ConfigMap::get_double(const std::string& key, double fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    try {
        return std::stod(it->second);
    } catch (const std::exception&) {
        throw InvalidConfig("config key " + key + " is not a number: " + it->second);
    }
}

bool ConfigMap::get_bool(const std::string& key, bool fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    const std::string& v = it->second;
    if (v == "1" || v == "true" || v == "yes") return true;
    if (v == "0" || v == "false" || v == "no") return false;
    throw InvalidConfig("config key " + key + " is not a flag: " + v);
}

void PipelineConfig::validate() const {
    if (m < 1) throw InvalidConfig("m must be >= 1");
    if (t < 1) throw InvalidConfig("t must be >= 1");
    if (k < 1) throw InvalidConfig("k must be >= 1");
    if (folds < 2) throw InvalidConfig("folds must be >= 2");
    train.validate();
}

PipelineConfig PipelineConfig::from_map(const ConfigMap& map) {
    PipelineConfig c;
    c.events_path = map.get_string("paths.events", "");
    c.projects_path = map.get_string("paths.projects", "");
    c.profiles_path = map.get_string("paths.profiles", "");
    c.out_dir = map.get_string("paths.out", c.out_dir);

    c.m = static_cast<int>(map.get_int("params.m", c.m));
    c.t = static_cast<int>(map.get_int("params.t", c.t));
    c.k = static_cast<int>(map.get_int("params.k", c.k));
    c.folds = static_cast<int>(map.get_int("params.folds", c.folds));
    c.seed = map.get_uint("params.seed", c.seed);

    std::string mode = map.get_string("select.mode", "percentile");
    if (mode == "percentile")
        c.select_mode = SelectMode::Percentile;
    else if (mode == "explicit")
        c.select_mode = SelectMode::Explicit;
    else if (mode == "none")
        c.select_mode = SelectMode::None;
    else
        throw InvalidConfig("select.mode must be percentile, explicit, or none");
    c.percentile = map.get_double("select.percentile", c.percentile);
    c.thresholds.min_commits = map.get_int("select.min_commits", 0);
    c.thresholds.min_prs = map.get_int("select.min_prs", 0);
    c.thresholds.min_issues = map.get_int("select.min_issues", 0);
    c.thresholds.min_forks = map.get_int("select.min_forks", 0);
    c.thresholds.min_stars = map.get_int("select.min_stars", 0);
    c.thresholds.min_span_days = map.get_int("select.min_span_days", 0);
    c.thresholds.created_after = map.get_int("select.created_after", 0);
    c.thresholds.created_before =
        map.get_int("select.created_before", c.thresholds.created_before);

    c.train.n_trees = static_cast<int>(map.get_int("train.n_trees", c.train.n_trees));
    c.train.max_depth = static_cast<int>(map.get_int("train.max_depth", c.train.max_depth));
    c.train.learning_rate = map.get_double("train.learning_rate", c.train.learning_rate);
    c.train.min_child_weight =
        map.get_double("train.min_child_weight", c.train.min_child_weight);
    c.train.l2_lambda = map.get_double("train.l2_lambda", c.train.l2_lambda);
    c.train.subsample = map.get_double("train.subsample", c.train.subsample);
    c.train.colsample = map.get_double("train.colsample", c.train.colsample);

    c.explain.n_samples =
        static_cast<std::size_t>(map.get_int("explain.n_samples", 5000));
    c.explain.kernel_width = map.get_double("explain.kernel_width", 0.0);
    c.explain.ridge_alpha = map.get_double("explain.ridge_alpha", 1.0);

    c.roles.core_share = map.get_double("roles.core_share", c.roles.core_share);
    c.roles.strict_greater = map.get_bool("roles.strict_greater", c.roles.strict_greater);
    std::string suffixes = map.get_string("roles.bot_suffixes", "[bot]");
    c.roles.bot_suffixes.clear();
    std::size_t start = 0;
    while (start <= suffixes.size() && !suffixes.empty()) {
        std::size_t pos = suffixes.find(';', start);
        std::string token = pos == std::string::npos ? suffixes.substr(start)
                                                     : suffixes.substr(start, pos - start);
        if (!token.empty()) c.roles.bot_suffixes.push_back(token);
        if (pos == std::string::npos) break;
        start = pos + 1;
    }

    c.features.zero_fill_missing_profiles =
        map.get_bool("features.zero_fill_missing_profiles", false);
    c.label.include_empty_buckets = map.get_bool("label.include_empty_buckets", true);

    c.synth.n_projects =
        static_cast<std::size_t>(map.get_int("synth.n_projects", 1000));
    c.synth.seed = map.get_uint("synth.seed", 0) != 0 ? map.get_uint("synth.seed", 0) : c.seed;
    c.synth.noise_level = map.get_double("synth.noise", c.synth.noise_level);
    c.synth.lin_mix = map.get_double("synth.lin_mix", c.synth.lin_mix);
    c.synth.steady_fraction = map.get_double("synth.steady_fraction", c.synth.steady_fraction);
    c.synth.front_loaded_fraction =
        map.get_double("synth.front_loaded_fraction", c.synth.front_loaded_fraction);
    c.synth.bursty_fraction = map.get_double("synth.bursty_fraction", c.synth.bursty_fraction);
    c.synth.committer_mean = map.get_double("synth.committer_mean", c.synth.committer_mean);
    c.synth.noncode_mean = map.get_double("synth.noncode_mean", c.synth.noncode_mean);
    c.synth.observation_months = c.m;
    c.synth.sustain_t_years = c.t;
    c.synth.sustain_k = c.k;
    c.synth.fork_fraction = map.get_double("synth.fork_fraction", c.synth.fork_fraction);
    c.synth.deleted_fraction =
        map.get_double("synth.deleted_fraction", c.synth.deleted_fraction);
    // planted = "#cmt_actday:1.5;#follower_c:1.5"
    std::string planted = map.get_string("synth.planted", "");
    std::size_t at = 0;
    while (at < planted.size()) {
        std::size_t end = planted.find(';', at);
        std::string token =
            end == std::string::npos ? planted.substr(at) : planted.substr(at, end - at);
        if (!token.empty()) {
            std::size_t colon = token.rfind(':');
            if (colon == std::string::npos)
                throw InvalidConfig("synth.planted entries need name:strength, got " + token);
            std::string name = token.substr(0, colon);
            double strength;
            try {
                strength = std::stod(token.substr(colon + 1));
            } catch (const std::exception&) {
                throw InvalidConfig("bad planted strength in " + token);
            }
            c.synth.planted_effects[name] = strength;
        }
        if (end == std::string::npos) break;
        at = end + 1;
    }
    return c;
}

}  // namespace sustain
