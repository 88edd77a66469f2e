#ifndef SUSTAIN_CONFIG_HPP
#define SUSTAIN_CONFIG_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "sustain/boosting.hpp"
#include "sustain/corpus.hpp"
#include "sustain/explain.hpp"
#include "sustain/roles.hpp"
#include "sustain/synth.hpp"

namespace sustain {

// Flat key-value configuration with [section] headers; keys are stored
// as "section.key". CLI flags override entries of the same name.
class ConfigMap {
public:
    ConfigMap() = default;
    static ConfigMap load(const std::string& path);

    void set(const std::string& key, const std::string& value) { values_[key] = value; }
    bool has(const std::string& key) const { return values_.count(key) > 0; }

    std::string get_string(const std::string& key, const std::string& fallback) const;
    std::int64_t get_int(const std::string& key, std::int64_t fallback) const;
    std::uint64_t get_uint(const std::string& key, std::uint64_t fallback) const;
    double get_double(const std::string& key, double fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;

private:
    std::map<std::string, std::string> values_;
};

enum class SelectMode { None, Percentile, Explicit };

struct PipelineConfig {
    std::string events_path;
    std::string projects_path;
    std::string profiles_path;
    std::string out_dir = "out";

    int m = 3;
    int t = 2;
    int k = 1;
    int folds = 10;
    std::uint64_t seed = 42;

    SelectMode select_mode = SelectMode::Percentile;
    double percentile = 0.95;
    SelectionThresholds thresholds;

    TrainConfig train;
    ExplainConfig explain;
    RoleConfig roles;
    FeatureConfig features;
    SynthConfig synth;
    LabelConfig label;

    void validate() const;
    static PipelineConfig from_map(const ConfigMap& map);
};

}  // namespace sustain

#endif
