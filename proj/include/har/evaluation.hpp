#pragma once

#include <optional>
#include <string>
#include <vector>

#include "har/day_partition.hpp"
#include "har/events.hpp"
#include "har/features.hpp"
#include "har/knn.hpp"
#include "har/metrics.hpp"
#include "har/mutual_info.hpp"
#include "har/windowing.hpp"

namespace har {

struct GridSpec {
  std::vector<int> window_sizes = {5, 10, 15, 20, 25, 30};
  std::vector<int> k_values = {1, 3, 5, 7, 9, 11, 15, 21, 25};
};

enum class SelectionMetric { Accuracy, WeightedF1 };

std::string_view selection_metric_name(SelectionMetric m);

struct PipelineOptions {
  SplitRatios ratios;
  bool skip_truncated = false;
  DescriptorOptions descriptor;
  TemporalMIOptions temporal_mi;
  std::vector<double> partition_grid;  // empty -> integer hours 0..23
  SelectionMetric selection = SelectionMetric::Accuracy;
  Exec exec = Exec::Parallel;
};

/// Everything fitted from a training stream alone; no validation or test
/// data enters here.
struct FittedPipeline {
  FeatureModels models;
  std::optional<DayPartition> partition;
  std::optional<DwModel> dw;
  int sensor_count = 0;
};

/// Fits the models the config needs (global/activity/temporal MI, the day
/// partition, the DW model) from train only. The window-dependent
/// co-occurrence matrix and scaler are fitted later, per window size.
FittedPipeline fit_pipeline(const EventStream& train, const FeatureConfig& cfg,
                            const GridSpec& grids, const PipelineOptions& opts);

std::vector<LabeledWindow> build_windows(const EventStream& stream, int window_size,
                                         const FittedPipeline& pipeline,
                                         const FeatureConfig& cfg,
                                         const PipelineOptions& opts);

/// Extractor for one (config, window size) cell: adds the co-occurrence
/// matrix and min-max scaler on top of the shared fitted pipeline, both from
/// train windows only.
FeatureExtractor make_extractor(const FittedPipeline& pipeline,
                                const FeatureConfig& cfg,
                                std::span<const LabeledWindow> train_windows,
                                const PipelineOptions& opts);

struct GridEntry {
  int window_size = 0;  // 0 when dynamic windows are active
  int k = 0;
  double score = 0;
  bool failed = false;
  std::string error;
};

struct GridResult {
  std::vector<GridEntry> trace;
  GridEntry best;
  SelectionMetric metric = SelectionMetric::Accuracy;
};

/// Scores every (window size, k) cell on the validation split; models are
/// fitted on train only. Failed cells are recorded and skipped; ties go to
/// the smaller window size, then the smaller k.
GridResult grid_search(const EventStream& train, const EventStream& validation,
                       const GridSpec& grids, const FeatureConfig& cfg,
                       const PipelineOptions& opts);

struct PredictionRecord {
  Micros timestamp = 0;
  Activity truth = Activity::Other;
  Activity predicted = Activity::Other;
};

struct ExperimentResult {
  std::string dataset;
  std::string method;
  EvalReport with_other;
  EvalReport without_other;
  GridResult grid;
  std::optional<DayPartition> partition;  // from the final refit
  FeatureConfig config;
  std::vector<PredictionRecord> predictions;
  std::size_t train_events = 0, validation_events = 0, test_events = 0;
};

/// Full protocol: grid search on train/validation, refit of every model on
/// train+validation at the chosen configuration, evaluation on test with and
/// without the Other class. Deterministic end to end.
ExperimentResult run_experiment(const EventStream& dataset, const FeatureConfig& cfg,
                                const GridSpec& grids, const PipelineOptions& opts);

ExperimentResult run_experiment_on_splits(const Splits& splits,
                                          const FeatureConfig& cfg,
                                          const GridSpec& grids,
                                          const PipelineOptions& opts);

}  // namespace har
