#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "har/day_partition.hpp"
#include "har/events.hpp"
#include "har/windowing.hpp"

namespace har {

/// M x M nonnegative matrix of empirical consecutive-firing (or
/// co-occurrence) probabilities.
struct MIMatrix {
  int m = 0;
  std::int64_t source_event_count = 0;
  std::vector<double> values;  // row-major m*m

  static MIMatrix zeros(int m);
  double at(int i, int j) const {
    return values[static_cast<std::size_t>(i) * static_cast<std::size_t>(m) +
                  static_cast<std::size_t>(j)];
  }
  double& at(int i, int j) {
    return values[static_cast<std::size_t>(i) * static_cast<std::size_t>(m) +
                  static_cast<std::size_t>(j)];
  }
  double sum() const;
  bool operator==(const MIMatrix&) const = default;
};

/// Entry (i,j) = (1/n) * #{t : s_t = S_i and s_{t+1} = S_j}. n <= 1 gives the
/// zero matrix. Throws on a sensor index >= m.
MIMatrix mi_global(std::span<const SensorEvent> events, int m);

struct TemporalMI {
  MIMatrix morning, afternoon, night;
  DayPartition partition;

  const MIMatrix& for_hour(double hour) const;
};

struct TemporalMIOptions {
  /// Count a pair only when the two events are adjacent in the original
  /// stream (instead of adjacent within the segment subsequence).
  bool adjacent_only = false;
};

/// Per-day-segment matrices; events are assigned to segments by their own
/// timestamp's hour and each matrix is normalized by its segment's length.
TemporalMI mi_temporal(std::span<const SensorEvent> events, int m,
                       const DayPartition& partition,
                       const TemporalMIOptions& opts = {});

/// Entry (i,j) = fraction of windows containing at least one event of S_i and
/// one of S_j; symmetric by construction.
MIMatrix mi_cooccurrence(std::span<const LabeledWindow> windows, int m);

/// Consecutive pairs counted only inside maximal same-label non-Other runs,
/// normalized by the total event count of those runs.
MIMatrix mi_activity(const EventStream& train, int m);

/// {m, n, labels, rows} cache format; doubles round-trip value-exact.
std::string mi_to_json(const MIMatrix& mi, const std::vector<std::string>& labels);
MIMatrix mi_from_json(std::string_view text, std::vector<std::string>* labels = nullptr);

}  // namespace har
