#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "har/events.hpp"

namespace har {

/// Deterministic uniform draws on top of std::mt19937_64 (the engine and the
/// derivations below are fixed, so streams reproduce across platforms and
/// library versions; std::*_distribution is avoided on purpose).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// [0,1) with 53 random bits.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  /// [0,n) without modulo bias.
  std::uint64_t uniform_int(std::uint64_t n);

 private:
  std::mt19937_64 engine_;
};

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream_index);

struct ActivitySpec {
  Activity label = Activity::Other;
  double start_hour_min = 0;  // activity starts uniformly in this window
  double start_hour_max = 0;
  double duration_minutes_min = 0;
  double duration_minutes_max = 0;
  std::vector<std::string> sensors;  // pool the activity fires from
  double events_per_minute = 1.0;
};

struct RoutineSpec {
  std::uint64_t seed = 0;
  int days = 1;
  std::string start_date = "2024-01-01";
  std::vector<std::string> sensors;
  double noise_density = 0.10;      // target fraction of Other noise events
  double start_jitter_minutes = 0;  // extra +/- jitter on activity starts
  std::vector<ActivitySpec> activities;
};

/// Strict-schema JSON parse; unknown keys are rejected.
RoutineSpec routine_from_json(std::string_view text);
RoutineSpec routine_from_file(const std::string& path);

/// Pure function of the spec: per-day derived seeds, labeled activity events
/// plus sparse Other noise in the gaps, chronologically sorted.
EventStream generate(const RoutineSpec& spec);

}  // namespace har
