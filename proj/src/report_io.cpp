#include "har/report_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include <json.hpp>

namespace har {
namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json eval_report_json(const EvalReport& rep) {
  ordered_json j;
  j["n_samples"] = rep.n_samples;
  j["accuracy"] = rep.accuracy;
  j["weighted_f1"] = rep.weighted_f1;
  j["excluded"] =
      rep.excluded ? ordered_json(activity_name(*rep.excluded)) : ordered_json(nullptr);
  auto& per_class = j["per_class"] = ordered_json::array();
  for (const auto& cm : rep.per_class) {
    per_class.push_back({{"label", activity_name(cm.label)},
                         {"precision", cm.precision},
                         {"recall", cm.recall},
                         {"f1", cm.f1},
                         {"support", cm.support}});
  }
  auto& confusion = j["confusion"];
  auto& labels = confusion["labels"] = ordered_json::array();
  for (int c = 0; c < kActivityCount; ++c)
    labels.push_back(activity_name(static_cast<Activity>(c)));
  auto& counts = confusion["counts"] = ordered_json::array();
  for (const auto& row : rep.confusion)
    counts.push_back(std::vector<std::int64_t>(row.begin(), row.end()));
  const auto norm = rep.normalized();
  auto& normalized = confusion["normalized"] = ordered_json::array();
  for (const auto& row : norm)
    normalized.push_back(std::vector<double>(row.begin(), row.end()));
  j["warnings"] = rep.warnings;
  return j;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

}  // namespace

std::string report_json(const ExperimentResult& result, int indent) {
  ordered_json j;
  j["dataset"] = result.dataset;
  j["method"] = result.method;
  j["events"] = {{"train", result.train_events},
                 {"validation", result.validation_events},
                 {"test", result.test_events}};
  j["selection_metric"] = selection_metric_name(result.grid.metric);
  j["chosen"] = {{"window_size", result.grid.best.window_size},
                 {"k", result.grid.best.k},
                 {"dynamic_window", result.config.dynamic_window},
                 {"validation_score", result.grid.best.score}};
  j["partition"] = result.partition
                       ? ordered_json{{"mu", result.partition->mu},
                                      {"alpha", result.partition->alpha},
                                      {"nu", result.partition->nu}}
                       : ordered_json(nullptr);
  auto& trace = j["grid_trace"] = ordered_json::array();
  for (const auto& e : result.grid.trace) {
    ordered_json cell = {{"window_size", e.window_size}, {"k", e.k}};
    if (e.failed) {
      cell["failed"] = true;
      cell["error"] = e.error;
    } else {
      cell["score"] = e.score;
    }
    trace.push_back(std::move(cell));
  }
  j["with_other"] = eval_report_json(result.with_other);
  j["without_other"] = eval_report_json(result.without_other);
  return j.dump(indent) + "\n";
}

std::string metrics_csv_row_header() {
  return "dataset,method,window_size,k,accuracy,weighted_f1,"
         "accuracy_no_other,weighted_f1_no_other,status\n";
}

std::string metrics_csv(std::span<const CsvRow> rows) {
  std::string out = metrics_csv_row_header();
  for (const auto& row : rows) {
    out += row.dataset + "," + row.method + ",";
    if (row.failed || row.result == nullptr) {
      out += ",,,,,failed: " + row.error + "\n";
      continue;
    }
    const auto& r = *row.result;
    out += std::to_string(r.grid.best.window_size) + "," +
           std::to_string(r.grid.best.k) + "," + fmt(r.with_other.accuracy) + "," +
           fmt(r.with_other.weighted_f1) + "," + fmt(r.without_other.accuracy) +
           "," + fmt(r.without_other.weighted_f1) + ",ok\n";
  }
  return out;
}

std::string confusion_svg(const EvalReport& report, const std::string& title) {
  const auto norm = report.normalized();
  constexpr int cell = 34;
  constexpr int left = 60, top = 50;
  const int grid = cell * kActivityCount;
  const int legend_x = left + grid + 20;
  const int width = legend_x + 180;
  const int height = top + grid + 60;

  std::string svg;
  char buf[256];
  auto add = [&](const char* fmt_str, auto... args) {
    std::snprintf(buf, sizeof(buf), fmt_str, args...);
    svg += buf;
  };

  add("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%d\" height=\"%d\" "
      "font-family=\"sans-serif\" font-size=\"10\">\n",
      width, height);
  add("<text x=\"%d\" y=\"18\" font-size=\"13\">%s</text>\n", left, title.c_str());
  add("<text x=\"%d\" y=\"34\">predicted label</text>\n", left + grid / 2 - 34);

  for (int r = 0; r < kActivityCount; ++r) {
    for (int c = 0; c < kActivityCount; ++c) {
      const double v = norm[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
      // white -> dark blue
      const int red = static_cast<int>(std::lround(255.0 * (1.0 - v)));
      const int green = static_cast<int>(std::lround(255.0 - 178.0 * v));
      const int blue = static_cast<int>(std::lround(255.0 - 100.0 * v));
      add("<rect x=\"%d\" y=\"%d\" width=\"%d\" height=\"%d\" "
          "fill=\"rgb(%d,%d,%d)\" stroke=\"#ccc\"/>\n",
          left + c * cell, top + r * cell, cell, cell, red, green, blue);
      if (v > 0.004) {
        add("<text x=\"%d\" y=\"%d\" text-anchor=\"middle\" fill=\"%s\">%.2f</text>\n",
            left + c * cell + cell / 2, top + r * cell + cell / 2 + 4,
            v > 0.5 ? "#fff" : "#333", v);
      }
    }
  }
  for (int i = 0; i < kActivityCount; ++i) {
    add("<text x=\"%d\" y=\"%d\" text-anchor=\"middle\">%d</text>\n",
        left + i * cell + cell / 2, top + grid + 14, i);
    add("<text x=\"%d\" y=\"%d\" text-anchor=\"end\">%d</text>\n", left - 6,
        top + i * cell + cell / 2 + 4, i);
    add("<text x=\"%d\" y=\"%d\">%d: %s</text>\n", legend_x, top + 12 + i * 14, i,
        std::string(activity_name(static_cast<Activity>(i))).c_str());
  }
  add("<text x=\"14\" y=\"%d\" transform=\"rotate(-90 14 %d)\">true label</text>\n",
      top + grid / 2 + 24, top + grid / 2 + 24);
  svg += "</svg>\n";
  return svg;
}

std::string predictions_csv(std::span<const PredictionRecord> predictions) {
  std::string out = "timestamp,true,predicted\n";
  for (const auto& p : predictions) {
    out += format_timestamp(p.timestamp);
    out += ',';
    out += activity_name(p.truth);
    out += ',';
    out += activity_name(p.predicted);
    out += '\n';
  }
  return out;
}

}  // namespace har
