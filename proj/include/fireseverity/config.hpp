#pragma once

#include "fireseverity/fsi.hpp"
#include "fireseverity/gbt.hpp"
#include "fireseverity/indices.hpp"
#include "fireseverity/preprocess.hpp"

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace fireseverity {

// Sectioned key-value pipeline configuration; see README for the grammar.
struct PipelineConfig {
    std::filesystem::path base_dir; // directory of the config file

    // [inputs]
    std::filesystem::path firms_csv;
    std::filesystem::path dem;
    std::filesystem::path mean_temperature;
    std::filesystem::path total_precipitation;
    std::filesystem::path smi;
    std::map<int, std::filesystem::path> landsat_by_year;
    std::map<int, std::vector<std::filesystem::path>> pre_scenes_by_year;
    std::map<int, std::vector<std::filesystem::path>> post_scenes_by_year;

    // [grid]
    double pixel_size_m = 500.0;

    // [years]
    std::vector<int> fire_years;

    // [model]
    GbtConfig model;

    // [fsi]
    FsiParams fsi_params;
    double min_confidence = 30.0;

    // [indices]
    CompositeStatistic composite_statistic = CompositeStatistic::Median;

    // [analysis]
    std::filesystem::path scenario_file;
    std::filesystem::path priority_config_file;
    std::filesystem::path priority_records_file;

    // [output]
    std::filesystem::path output_dir = "out";

    void validate() const; // structural checks only; paths checked by commands
};

PipelineConfig load_pipeline_config(const std::filesystem::path& path);

} // namespace fireseverity
