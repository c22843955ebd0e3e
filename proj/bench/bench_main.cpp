// Timings for the data-parallel kernels against their serial references:
// batch feature extraction, batch KNN prediction, partition grid search.

#include <chrono>
#include <cstdio>
#include <string>

#include "har/day_partition.hpp"
#include "har/evaluation.hpp"
#include "har/knn.hpp"
#include "har/synth.hpp"

using Clock = std::chrono::steady_clock;

namespace {

har::RoutineSpec bench_spec(int days) {
  har::RoutineSpec spec;
  spec.seed = 7;
  spec.days = days;
  spec.sensors = {"M0", "M1", "M2", "M3", "M4", "M5", "M6", "M7", "M8", "M9"};
  spec.noise_density = 0.10;
  auto act = [&](har::Activity label, double h0, double h1, double d0, double d1,
                 std::vector<std::string> sensors, double rate) {
    spec.activities.push_back({label, h0, h1, d0, d1, std::move(sensors), rate});
  };
  act(har::Activity::Sleep, 22.5, 23.5, 380, 460, {"M0"}, 0.7);
  act(har::Activity::Cook, 7.0, 8.0, 25, 45, {"M1", "M2", "M3"}, 3.0);
  act(har::Activity::Eat, 8.1, 8.6, 15, 30, {"M4"}, 2.0);
  act(har::Activity::Work, 9.5, 10.5, 120, 200, {"M5", "M6"}, 1.5);
  act(har::Activity::Cook, 17.5, 18.5, 30, 50, {"M1", "M2", "M3"}, 3.0);
  act(har::Activity::Relax, 19.5, 20.5, 60, 120, {"M7", "M8"}, 1.2);
  act(har::Activity::Bathing, 21.0, 21.5, 10, 20, {"M9"}, 2.0);
  return spec;
}

template <typename F>
double time_ms(F&& fn, int repeats) {
  double best = 1e300;
  for (int r = 0; r < repeats; ++r) {
    const auto t0 = Clock::now();
    fn();
    const auto t1 = Clock::now();
    best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  return best;
}

void row(const char* name, double serial_ms, double parallel_ms) {
  std::printf("%-24s %10.1f ms %10.1f ms %8.2fx\n", name, serial_ms, parallel_ms,
              serial_ms / parallel_ms);
}

}  // namespace

int main(int argc, char** argv) {
  int days = 45;
  int repeats = 3;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--days" && i + 1 < argc) days = std::atoi(argv[++i]);
    else if (arg == "--repeat" && i + 1 < argc) repeats = std::atoi(argv[++i]);
    else {
      std::printf("usage: har_bench [--days N] [--repeat R]\n");
      return 2;
    }
  }

  const har::EventStream stream = har::generate(bench_spec(days));
  std::printf("dataset: %zu events, %d sensors, %d threads\n\n", stream.size(),
              stream.sensor_count(), har::max_threads());
  std::printf("%-24s %13s %13s %9s\n", "kernel", "serial", "openmp", "speedup");

  const auto windows = har::event_windows(stream, 25);
  const har::MIMatrix mi = har::mi_global(stream.events, stream.sensor_count());
  har::FeatureModels models;
  models.mi = mi;
  har::FeatureConfig cfg;
  cfg.base = har::BaseFeature::SWMI;
  cfg.cyclic = true;
  cfg.location_change = true;
  const har::FeatureExtractor extractor(cfg, models, stream.sensor_count());

  har::FeatureMatrix feat;
  {
    const double serial_ms =
        time_ms([&] { feat = extractor.extract_batch_serial(windows); }, repeats);
    const double parallel_ms =
        time_ms([&] { feat = extractor.extract_batch(windows); }, repeats);
    row("feature extraction", serial_ms, parallel_ms);
  }

  {
    const std::size_t n_train = feat.rows * 3 / 4;
    har::FeatureMatrix train = feat;
    train.rows = n_train;
    train.data.resize(n_train * feat.dim);
    std::vector<har::Activity> labels;
    for (std::size_t i = 0; i < n_train; ++i) labels.push_back(windows[i].label());
    const har::KnnModel knn = har::KnnModel::fit(std::move(train), labels, 11);

    har::FeatureMatrix queries = feat;
    queries.data.erase(queries.data.begin(),
                       queries.data.begin() + static_cast<std::ptrdiff_t>(n_train * feat.dim));
    queries.rows = feat.rows - n_train;

    const double serial_ms =
        time_ms([&] { (void)knn.predict_batch_serial(queries); }, repeats);
    const double parallel_ms =
        time_ms([&] { (void)knn.predict_batch(queries); }, repeats);
    row("knn batch predict", serial_ms, parallel_ms);
  }

  {
    const auto descriptors = har::activity_descriptors(stream);
    const auto grid = har::default_hour_grid();
    const double serial_ms = time_ms(
        [&] { (void)har::optimize_partition_serial(descriptors, grid); }, repeats);
    const double parallel_ms =
        time_ms([&] { (void)har::optimize_partition(descriptors, grid); }, repeats);
    row("partition search", serial_ms, parallel_ms);
  }

  return 0;
}
