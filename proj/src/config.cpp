#include "har/config.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace har {
namespace {

using nlohmann::json;

const std::initializer_list<const char*> kAllowedKeys = {
    "dataset",
    "dataset_name",
    "label_map",
    "method",
    "methods",
    "output_dir",
    "split_ratios",
    "window_sizes",
    "k_values",
    "selection_metric",
    "skip_truncated",
    "include_other_descriptors",
    "standardize_descriptors",
    "temporal_mi_adjacent_only",
    "partition_grid",
    "swtw_half_life_seconds",
    "scaling",
    "limit_days",
    "threads",
    "serial",
};

}  // namespace

ExperimentConfig config_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid config JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (std::find_if(kAllowedKeys.begin(), kAllowedKeys.end(), [&, k = key](const char* a) {
          return k == a;
        }) == kAllowedKeys.end())
      throw ConfigError("unknown config key '" + key + "'");
  }

  ExperimentConfig cfg;
  try {
    cfg.dataset = j.value("dataset", std::string{});
    cfg.dataset_name = j.value("dataset_name", std::string{});
    cfg.label_map = j.value("label_map", std::string{});
    cfg.method = j.value("method", std::string("SWMI"));
    if (j.contains("methods"))
      cfg.methods = j["methods"].get<std::vector<std::string>>();
    cfg.output_dir = j.value("output_dir", std::string("out"));

    if (j.contains("split_ratios")) {
      const auto r = j["split_ratios"].get<std::vector<double>>();
      if (r.size() != 3)
        throw ConfigError("split_ratios must have exactly 3 entries");
      cfg.options.ratios = {r[0], r[1], r[2]};
    }
    if (j.contains("window_sizes"))
      cfg.grids.window_sizes = j["window_sizes"].get<std::vector<int>>();
    if (j.contains("k_values"))
      cfg.grids.k_values = j["k_values"].get<std::vector<int>>();

    const std::string metric = j.value("selection_metric", std::string("accuracy"));
    if (metric == "accuracy")
      cfg.options.selection = SelectionMetric::Accuracy;
    else if (metric == "weighted_f1")
      cfg.options.selection = SelectionMetric::WeightedF1;
    else
      throw ConfigError("selection_metric must be accuracy|weighted_f1");

    cfg.options.skip_truncated = j.value("skip_truncated", false);
    cfg.options.descriptor.include_other = j.value("include_other_descriptors", false);
    cfg.options.descriptor.standardize = j.value("standardize_descriptors", true);
    cfg.options.temporal_mi.adjacent_only = j.value("temporal_mi_adjacent_only", false);
    if (j.contains("partition_grid"))
      cfg.options.partition_grid = j["partition_grid"].get<std::vector<double>>();

    cfg.swtw_half_life_seconds = j.value("swtw_half_life_seconds", 60.0);
    if (cfg.swtw_half_life_seconds <= 0)
      throw ConfigError("swtw_half_life_seconds must be positive");

    const std::string scaling = j.value("scaling", std::string("none"));
    if (scaling == "none")
      cfg.scaling = Scaling::None;
    else if (scaling == "minmax")
      cfg.scaling = Scaling::MinMax;
    else
      throw ConfigError("scaling must be none|minmax");

    cfg.limit_days = j.value("limit_days", 0);
    cfg.threads = j.value("threads", 0);
    if (j.value("serial", false)) cfg.options.exec = Exec::Serial;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return cfg;
}

ExperimentConfig config_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return config_from_json(buf.str());
}

FeatureConfig feature_config_for(const ExperimentConfig& cfg,
                                 const std::string& method) {
  FeatureConfig fc = parse_method(method);
  fc.swtw_lambda = std::log(2.0) / cfg.swtw_half_life_seconds;
  fc.scaling = cfg.scaling;
  return fc;
}

LoadResult load_configured_dataset(const ExperimentConfig& cfg) {
  if (cfg.dataset.empty()) throw ConfigError("config: 'dataset' is required");
  const LabelMap map =
      cfg.label_map.empty() ? LabelMap::defaults() : LabelMap::load(cfg.label_map);
  LoadResult result = load_dataset(cfg.dataset, map);
  if (cfg.limit_days > 0) {
    result.stream = limit_to_days(result.stream, cfg.limit_days);
    result.other_fraction = other_fraction(result.stream);
  }
  return result;
}

}  // namespace har
