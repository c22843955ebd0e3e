#pragma once

#include <optional>
#include <string>
#include <vector>

#include "har/evaluation.hpp"

namespace har {

/// One experiment definition as read from a config file. Every pipeline
/// default is representable and overridable; unknown keys are rejected.
struct ExperimentConfig {
  std::string dataset;
  std::string dataset_name;  // defaults to the dataset filename stem
  std::string label_map;     // empty -> built-in defaults
  std::string method = "SWMI";
  std::vector<std::string> methods;  // compare mode
  std::string output_dir = "out";
  GridSpec grids;
  PipelineOptions options;
  double swtw_half_life_seconds = 60.0;
  Scaling scaling = Scaling::None;
  int limit_days = 0;  // 0 = whole dataset
  int threads = 0;     // 0 = runtime default
};

ExperimentConfig config_from_json(std::string_view text);
ExperimentConfig config_from_file(const std::string& path);

/// Builds the FeatureConfig for one method string under this config.
FeatureConfig feature_config_for(const ExperimentConfig& cfg,
                                 const std::string& method);

/// Loads, labels and optionally day-limits the dataset named by the config.
LoadResult load_configured_dataset(const ExperimentConfig& cfg);

}  // namespace har
