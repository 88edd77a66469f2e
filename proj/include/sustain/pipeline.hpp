#ifndef SUSTAIN_PIPELINE_HPP
#define SUSTAIN_PIPELINE_HPP

#include <string>
#include <vector>

#include "sustain/config.hpp"

namespace sustain {

// Pipeline stages. Each reads/writes the documented artifacts under
// config.out_dir; intermediate files are the only coupling between
// stages.
void stage_synth(const PipelineConfig& config);
void stage_select(const PipelineConfig& config);
void stage_label(const PipelineConfig& config);
void stage_featurize(const PipelineConfig& config);
void stage_train(const PipelineConfig& config);
void stage_evaluate(const PipelineConfig& config, const std::string& dimension, bool grid);
void stage_explain(const PipelineConfig& config);
void stage_analyze(const PipelineConfig& config);
void stage_report(const PipelineConfig& config);

// Entry point used by the binary and the CLI tests. Returns the process
// exit code: 0 success, 1 validation error, 2 I/O error.
int run_cli(const std::vector<std::string>& args);

}  // namespace sustain

#endif
