#pragma once

#include <span>
#include <string>

#include "har/evaluation.hpp"

namespace har {

/// Full experiment report: metrics with/without Other, per-class table,
/// confusion matrices, chosen hyperparameters, partition thresholds, grid
/// trace. Stable key order; identical inputs give identical bytes.
std::string report_json(const ExperimentResult& result, int indent = 2);

/// One row per experiment: Acc./F1 with and without Other, plus the chosen
/// hyperparameters. Failed experiments keep their row with a status message.
struct CsvRow {
  std::string dataset;
  std::string method;
  bool failed = false;
  std::string error;
  const ExperimentResult* result = nullptr;  // null when failed
};
std::string metrics_csv(std::span<const CsvRow> rows);
std::string metrics_csv_row_header();

/// Row-normalized confusion heatmap in the fixed class order.
std::string confusion_svg(const EvalReport& report, const std::string& title);

std::string predictions_csv(std::span<const PredictionRecord> predictions);

}  // namespace har
