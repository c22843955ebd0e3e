#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "har/config.hpp"
#include "har/report_io.hpp"
#include "har/synth.hpp"

namespace fs = std::filesystem;

namespace {

struct CliOverrides {
  std::string dataset;
  std::string output_dir;
  std::string method;
  bool serial = false;
};

har::ExperimentConfig load_config(const std::string& path, const CliOverrides& ov) {
  har::ExperimentConfig cfg = har::config_from_file(path);
  if (!ov.dataset.empty()) cfg.dataset = ov.dataset;
  if (!ov.output_dir.empty()) cfg.output_dir = ov.output_dir;
  if (!ov.method.empty()) cfg.method = ov.method;
  if (ov.serial) cfg.options.exec = har::Exec::Serial;
  if (cfg.dataset_name.empty())
    cfg.dataset_name = fs::path(cfg.dataset).stem().string();
  har::set_thread_count(cfg.threads);
  return cfg;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw har::Error("cannot write " + path.string());
  out << content;
}

void print_load_summary(const har::LoadResult& loaded, const std::string& name) {
  std::cout << name << ": " << loaded.stream.size() << " events, "
            << loaded.stream.sensor_count() << " sensors, Other fraction "
            << loaded.other_fraction;
  if (!loaded.parse_errors.empty())
    std::cout << ", " << loaded.parse_errors.size() << " parse errors";
  std::cout << "\n";
  for (const auto& w : loaded.warnings) std::cerr << "warning: " << w << "\n";
}

int cmd_run(const std::string& config_path, const CliOverrides& ov) {
  const har::ExperimentConfig cfg = load_config(config_path, ov);
  const har::LoadResult loaded = har::load_configured_dataset(cfg);
  print_load_summary(loaded, cfg.dataset_name);

  const har::FeatureConfig fc = har::feature_config_for(cfg, cfg.method);
  har::ExperimentResult result =
      har::run_experiment(loaded.stream, fc, cfg.grids, cfg.options);
  result.dataset = cfg.dataset_name;

  fs::create_directories(cfg.output_dir);
  const fs::path out(cfg.output_dir);
  write_file(out / "report.json", har::report_json(result));
  const har::CsvRow row{result.dataset, result.method, false, "", &result};
  write_file(out / "metrics.csv", har::metrics_csv({&row, 1}));
  write_file(out / "confusion.svg",
             har::confusion_svg(result.with_other,
                                result.dataset + " / " + result.method));
  write_file(out / "predictions.csv", har::predictions_csv(result.predictions));

  std::cout << result.dataset << " " << result.method
            << " | window=" << result.grid.best.window_size
            << " k=" << result.grid.best.k
            << " | Acc. " << result.with_other.accuracy
            << " F1 " << result.with_other.weighted_f1
            << " | no-Other Acc. " << result.without_other.accuracy
            << " F1 " << result.without_other.weighted_f1 << "\n";
  return 0;
}

int cmd_compare(const std::string& config_path, const CliOverrides& ov) {
  const har::ExperimentConfig cfg = load_config(config_path, ov);
  if (cfg.methods.empty())
    throw har::ConfigError("compare requires a non-empty 'methods' list");
  const har::LoadResult loaded = har::load_configured_dataset(cfg);
  print_load_summary(loaded, cfg.dataset_name);

  const har::Splits splits = har::temporal_split(loaded.stream, cfg.options.ratios);

  std::vector<har::ExperimentResult> results(cfg.methods.size());
  std::vector<har::CsvRow> rows;
  std::size_t ok = 0;
  for (std::size_t i = 0; i < cfg.methods.size(); ++i) {
    const std::string& method = cfg.methods[i];
    try {
      const har::FeatureConfig fc = har::feature_config_for(cfg, method);
      results[i] = har::run_experiment_on_splits(splits, fc, cfg.grids, cfg.options);
      results[i].dataset = cfg.dataset_name;
      rows.push_back({cfg.dataset_name, results[i].method, false, "", &results[i]});
      std::cout << method << ": Acc. " << results[i].with_other.accuracy << " F1 "
                << results[i].with_other.weighted_f1 << " | no-Other Acc. "
                << results[i].without_other.accuracy << " F1 "
                << results[i].without_other.weighted_f1 << "\n";
      ++ok;
    } catch (const har::Error& e) {
      rows.push_back({cfg.dataset_name, method, true, e.what(), nullptr});
      std::cerr << method << " failed: " << e.what() << "\n";
    }
  }

  fs::create_directories(cfg.output_dir);
  write_file(fs::path(cfg.output_dir) / "comparison.csv", har::metrics_csv(rows));
  if (ok == 0) throw har::Error("every method variant failed");
  return 0;
}

int cmd_synth(const std::string& spec_path, const std::string& out_path) {
  const har::RoutineSpec spec = har::routine_from_file(spec_path);
  const har::EventStream stream = har::generate(spec);
  write_file(out_path, har::serialize_casas(stream));
  std::cout << "wrote " << stream.size() << " events over " << spec.days
            << " days to " << out_path << "\n";
  return 0;
}

int cmd_partition(const std::string& config_path, const CliOverrides& ov,
                  const std::string& out_path) {
  const har::ExperimentConfig cfg = load_config(config_path, ov);
  const har::LoadResult loaded = har::load_configured_dataset(cfg);
  const har::Splits splits = har::temporal_split(loaded.stream, cfg.options.ratios);
  const auto descriptors =
      har::activity_descriptors(splits.train, cfg.options.descriptor);
  const auto grid = cfg.options.partition_grid.empty()
                        ? har::default_hour_grid()
                        : cfg.options.partition_grid;
  const har::DayPartition p =
      har::optimize_partition(descriptors, grid, cfg.options.exec);
  nlohmann::ordered_json j{{"mu", p.mu},
                           {"alpha", p.alpha},
                           {"nu", p.nu},
                           {"cohesion", har::cohesion(p, descriptors)},
                           {"descriptors", descriptors.size()}};
  const std::string text = j.dump(2) + "\n";
  if (!out_path.empty())
    write_file(out_path, text);
  else
    std::cout << text;
  return 0;
}

int cmd_features(const std::string& config_path, const CliOverrides& ov,
                 const std::string& out_path) {
  const har::ExperimentConfig cfg = load_config(config_path, ov);
  const har::LoadResult loaded = har::load_configured_dataset(cfg);
  const har::FeatureConfig fc = har::feature_config_for(cfg, cfg.method);
  const har::Splits splits = har::temporal_split(loaded.stream, cfg.options.ratios);

  const har::FittedPipeline pipeline =
      har::fit_pipeline(splits.train, fc, cfg.grids, cfg.options);
  const int n = cfg.grids.window_sizes.empty() ? 20 : cfg.grids.window_sizes.front();
  const auto train_windows =
      har::build_windows(splits.train, n, pipeline, fc, cfg.options);
  const har::FeatureExtractor extractor =
      har::make_extractor(pipeline, fc, train_windows, cfg.options);

  const auto all_windows =
      har::build_windows(loaded.stream, n, pipeline, fc, cfg.options);
  const har::FeatureMatrix feat =
      extractor.extract_batch(all_windows, cfg.options.exec);

  std::string csv;
  const auto names = feat.layout.dim_names(loaded.stream.registry.names());
  for (const auto& name : names) csv += name + ",";
  csv += "timestamp,label\n";
  char buf[32];
  for (std::size_t r = 0; r < feat.rows; ++r) {
    for (const double v : feat.row(r)) {
      std::snprintf(buf, sizeof(buf), "%.17g", v);
      csv += buf;
      csv += ',';
    }
    csv += har::format_timestamp(all_windows[r].trigger_timestamp());
    csv += ',';
    csv += har::activity_name(all_windows[r].label());
    csv += '\n';
  }
  write_file(out_path, csv);
  std::cout << "wrote " << feat.rows << " feature rows (" << feat.dim
            << " dims) to " << out_path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Streaming human-activity-recognition pipeline for passive "
               "smart-home sensors"};
  app.require_subcommand(1);

  CliOverrides ov;
  std::string config_path, spec_path, out_path;

  auto add_common = [&](CLI::App* sub, bool needs_config = true) {
    if (needs_config)
      sub->add_option("-c,--config", config_path, "experiment config JSON")
          ->required();
    sub->add_option("--dataset", ov.dataset, "override the config's dataset path");
    sub->add_option("--out", ov.output_dir, "override the output directory");
    sub->add_flag("--serial", ov.serial, "force single-threaded kernels");
  };

  auto* run = app.add_subcommand(
      "run", "run one experiment: grid search, refit, test-set report");
  add_common(run);
  run->add_option("--method", ov.method,
                  "override the config's method (e.g. SWMI+cyclic+location)");

  auto* compare = app.add_subcommand(
      "compare", "run every method in the config's 'methods' list on shared "
                 "splits and write a comparison CSV");
  add_common(compare);

  auto* synth = app.add_subcommand(
      "synth", "generate a synthetic labeled routine in CASAS text format");
  synth->add_option("--spec", spec_path, "routine spec JSON")->required();
  synth->add_option("--out", out_path, "output dataset path")->required();

  auto* partition = app.add_subcommand(
      "partition", "learn and print the morning/afternoon/night thresholds "
                   "from the training split");
  add_common(partition);
  partition->add_option("--out-file", out_path, "write JSON here instead of stdout");

  auto* features = app.add_subcommand(
      "features", "dump per-window feature vectors to CSV (models fitted on "
                  "the training split; first window size of the grid)");
  add_common(features);
  features->add_option("--method", ov.method, "override the config's method");
  features->add_option("--out-file", out_path, "output CSV path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (run->parsed()) return cmd_run(config_path, ov);
    if (compare->parsed()) return cmd_compare(config_path, ov);
    if (synth->parsed()) return cmd_synth(spec_path, out_path);
    if (partition->parsed()) return cmd_partition(config_path, ov, out_path);
    if (features->parsed()) return cmd_features(config_path, ov, out_path);
  } catch (const har::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
