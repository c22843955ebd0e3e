#include "har/evaluation.hpp"

#include <algorithm>

namespace har {

std::string_view selection_metric_name(SelectionMetric m) {
  return m == SelectionMetric::Accuracy ? "accuracy" : "weighted_f1";
}

namespace {

double score_of(const EvalReport& rep, SelectionMetric metric) {
  return metric == SelectionMetric::Accuracy ? rep.accuracy : rep.weighted_f1;
}

std::vector<Activity> window_labels(std::span<const LabeledWindow> windows) {
  std::vector<Activity> out;
  out.reserve(windows.size());
  for (const auto& w : windows) out.push_back(w.label());
  return out;
}

bool better_entry(const GridEntry& a, const GridEntry& b) {
  if (a.score != b.score) return a.score > b.score;
  if (a.window_size != b.window_size) return a.window_size < b.window_size;
  return a.k < b.k;
}

}  // namespace

FittedPipeline fit_pipeline(const EventStream& train, const FeatureConfig& cfg,
                            const GridSpec& grids, const PipelineOptions& opts) {
  FittedPipeline p;
  p.sensor_count = train.sensor_count();
  if (p.sensor_count < 1) throw Error("training stream has no sensors");

  switch (cfg.base) {
    case BaseFeature::SWMI:
    case BaseFeature::SWTW:
      p.models.mi = mi_global(train.events, p.sensor_count);
      break;
    case BaseFeature::SWMIAct:
      p.models.mi_act = mi_activity(train, p.sensor_count);
      break;
    case BaseFeature::SWMITemp: {
      const auto descriptors = activity_descriptors(train, opts.descriptor);
      const auto grid =
          opts.partition_grid.empty() ? default_hour_grid() : opts.partition_grid;
      p.partition = optimize_partition(descriptors, grid, opts.exec);
      p.models.tmi =
          mi_temporal(train.events, p.sensor_count, *p.partition, opts.temporal_mi);
      break;
    }
    default:
      break;
  }
  if (cfg.dynamic_window) p.dw = DwModel::fit(train, grids.window_sizes);
  return p;
}

std::vector<LabeledWindow> build_windows(const EventStream& stream, int window_size,
                                         const FittedPipeline& pipeline,
                                         const FeatureConfig& cfg,
                                         const PipelineOptions& opts) {
  if (cfg.dynamic_window) {
    if (!pipeline.dw) throw Error("dynamic windows require a fitted DW model");
    return dynamic_windows(stream, *pipeline.dw, opts.skip_truncated);
  }
  return event_windows(stream, window_size, opts.skip_truncated);
}

FeatureExtractor make_extractor(const FittedPipeline& pipeline,
                                const FeatureConfig& cfg,
                                std::span<const LabeledWindow> train_windows,
                                const PipelineOptions& opts) {
  FeatureModels models = pipeline.models;
  if (cfg.base == BaseFeature::SWMIex)
    models.mi_cooc = mi_cooccurrence(train_windows, pipeline.sensor_count);
  FeatureExtractor extractor(cfg, std::move(models), pipeline.sensor_count);
  if (cfg.scaling == Scaling::MinMax) {
    const FeatureMatrix unscaled = extractor.extract_batch(train_windows, opts.exec);
    extractor.set_scaler(MinMaxScaler::fit(unscaled));
  }
  return extractor;
}

GridResult grid_search(const EventStream& train, const EventStream& validation,
                       const GridSpec& grids, const FeatureConfig& cfg,
                       const PipelineOptions& opts) {
  if (grids.k_values.empty()) throw Error("grid search requires k values");
  if (!cfg.dynamic_window && grids.window_sizes.empty())
    throw Error("grid search requires window sizes");

  const FittedPipeline pipeline = fit_pipeline(train, cfg, grids, opts);

  GridResult result;
  result.metric = opts.selection;
  bool have_best = false;

  // DW chooses its own per-event sizes; the window-size axis collapses.
  const std::vector<int> sizes =
      cfg.dynamic_window ? std::vector<int>{0} : grids.window_sizes;

  for (int n : sizes) {
    std::vector<LabeledWindow> train_windows, val_windows;
    std::optional<FeatureExtractor> extractor;
    std::optional<FeatureMatrix> train_feat, val_feat;
    std::vector<Activity> train_labels, val_labels;
    std::string cell_error;
    try {
      train_windows = build_windows(train, n, pipeline, cfg, opts);
      val_windows = build_windows(validation, n, pipeline, cfg, opts);
      if (train_windows.empty()) throw Error("no training windows");
      if (val_windows.empty()) throw Error("no validation windows");
      extractor = make_extractor(pipeline, cfg, train_windows, opts);
      train_feat = extractor->extract_batch(train_windows, opts.exec);
      val_feat = extractor->extract_batch(val_windows, opts.exec);
      train_labels = window_labels(train_windows);
      val_labels = window_labels(val_windows);
    } catch (const Error& e) {
      cell_error = e.what();
    }

    for (int k : grids.k_values) {
      GridEntry entry;
      entry.window_size = n;
      entry.k = k;
      if (!cell_error.empty()) {
        entry.failed = true;
        entry.error = cell_error;
        result.trace.push_back(entry);
        continue;
      }
      try {
        FeatureMatrix train_copy = *train_feat;
        const KnnModel knn = KnnModel::fit(std::move(train_copy), train_labels, k);
        const auto pred = knn.predict_batch(*val_feat, opts.exec);
        entry.score = score_of(metrics(val_labels, pred), opts.selection);
      } catch (const Error& e) {
        entry.failed = true;
        entry.error = e.what();
      }
      result.trace.push_back(entry);
      if (!entry.failed && (!have_best || better_entry(entry, result.best))) {
        result.best = entry;
        have_best = true;
      }
    }
  }
  if (!have_best) throw Error("grid search: every configuration failed");
  return result;
}

ExperimentResult run_experiment_on_splits(const Splits& splits,
                                          const FeatureConfig& cfg,
                                          const GridSpec& grids,
                                          const PipelineOptions& opts) {
  ExperimentResult result;
  result.method = method_name(cfg);
  result.config = cfg;
  result.train_events = splits.train.size();
  result.validation_events = splits.validation.size();
  result.test_events = splits.test.size();

  result.grid = grid_search(splits.train, splits.validation, grids, cfg, opts);

  // Retrain every model on train+validation with the chosen configuration.
  EventStream trainval;
  trainval.registry = splits.train.registry;
  trainval.events.reserve(splits.train.size() + splits.validation.size());
  trainval.events.insert(trainval.events.end(), splits.train.events.begin(),
                         splits.train.events.end());
  trainval.events.insert(trainval.events.end(), splits.validation.events.begin(),
                         splits.validation.events.end());

  const FittedPipeline pipeline = fit_pipeline(trainval, cfg, grids, opts);
  result.partition = pipeline.partition;

  const int best_n = result.grid.best.window_size;
  const auto train_windows = build_windows(trainval, best_n, pipeline, cfg, opts);
  const auto test_windows = build_windows(splits.test, best_n, pipeline, cfg, opts);
  if (train_windows.empty()) throw Error("no train+validation windows");
  if (test_windows.empty()) throw Error("no test windows");

  FeatureExtractor extractor = make_extractor(pipeline, cfg, train_windows, opts);
  FeatureMatrix train_feat = extractor.extract_batch(train_windows, opts.exec);
  const FeatureMatrix test_feat = extractor.extract_batch(test_windows, opts.exec);
  const auto train_labels = window_labels(train_windows);
  const auto test_labels = window_labels(test_windows);

  const KnnModel knn =
      KnnModel::fit(std::move(train_feat), train_labels, result.grid.best.k);
  const auto predictions = knn.predict_batch(test_feat, opts.exec);

  result.predictions.reserve(test_windows.size());
  for (std::size_t i = 0; i < test_windows.size(); ++i)
    result.predictions.push_back({test_windows[i].trigger_timestamp(),
                                  test_labels[i], predictions[i]});

  result.with_other = metrics(test_labels, predictions);
  result.without_other = metrics(test_labels, predictions, Activity::Other);
  return result;
}

ExperimentResult run_experiment(const EventStream& dataset, const FeatureConfig& cfg,
                                const GridSpec& grids, const PipelineOptions& opts) {
  return run_experiment_on_splits(temporal_split(dataset, opts.ratios), cfg, grids,
                                  opts);
}

}  // namespace har
