#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "har/events.hpp"

namespace har {

/// A view of up to N consecutive events ending at the trigger event. Windows
/// reference the source stream's storage; the stream must outlive them.
struct LabeledWindow {
  std::span<const SensorEvent> events;

  const SensorEvent& trigger() const { return events.back(); }
  Activity label() const { return events.back().label; }
  Micros trigger_timestamp() const { return events.back().timestamp; }
  std::size_t size() const { return events.size(); }
};

/// One window per event; window k covers events max(0, k-N+1)..k. Windows at
/// the stream start are truncated unless skip_truncated is set.
std::vector<LabeledWindow> event_windows(const EventStream& stream, int n,
                                         bool skip_truncated = false);

/// Per-trigger-sensor histogram of same-label run lengths over a candidate
/// size grid; picks the most likely window size for each sensor.
class DwModel {
 public:
  static DwModel fit(const EventStream& train, const std::vector<int>& grid);

  /// Grid value with the largest histogram mass for the sensor (ties ->
  /// smaller size); unseen sensors fall back to the global histogram.
  int window_size(SensorId sensor) const;

  const std::vector<int>& grid() const { return grid_; }
  const std::vector<std::vector<std::int64_t>>& sensor_histograms() const {
    return per_sensor_;
  }
  const std::vector<std::int64_t>& global_histogram() const { return global_; }

 private:
  std::vector<int> grid_;
  std::vector<std::vector<std::int64_t>> per_sensor_;  // [sensor][grid idx]
  std::vector<std::int64_t> global_;
};

/// Windows whose size is chosen per trigger event by the fitted DwModel.
std::vector<LabeledWindow> dynamic_windows(const EventStream& stream,
                                           const DwModel& model,
                                           bool skip_truncated = false);

/// Debug dump, one JSON object per window per line.
std::string windows_to_jsonl(std::span<const LabeledWindow> windows,
                             const SensorRegistry& registry);

}  // namespace har
