#pragma once

#include "fireseverity/config.hpp"

#include <filesystem>

namespace fireseverity {

// Subcommand bodies. Each reads the inputs named by the config, writes
// stable file names under the output directory, and never mutates inputs.
// Errors surface as Config/Input/Validation exceptions; the CLI maps them
// to exit codes.

void cmd_ingest(const PipelineConfig& cfg);      // staged_<year>.tif, events.csv, rejections.csv
void cmd_features(const PipelineConfig& cfg);    // featured_<year>.tif, matrix.bin
void cmd_fsi(const PipelineConfig& cfg);         // fsi_monthly.csv, fsi_annual.csv
void cmd_train(const PipelineConfig& cfg);       // model.gbt, scaler.txt, metrics.csv, actual_vs_predicted.csv
void cmd_importance(const PipelineConfig& cfg);  // importance.csv
void cmd_correlate(const PipelineConfig& cfg);   // correlation.csv, correlation_flags.csv
void cmd_residuals(const PipelineConfig& cfg);   // residual_moments.csv, residual_histogram.csv
void cmd_sensitivity(const PipelineConfig& cfg); // sensitivity.csv
void cmd_priority(const PipelineConfig& cfg);    // priority.csv

// Runs every stage in pipeline order against one config.
void run_full_pipeline(const PipelineConfig& cfg);

} // namespace fireseverity
