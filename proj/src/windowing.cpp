#include "har/windowing.hpp"

#include <algorithm>

#include <json.hpp>

namespace har {
namespace {

std::vector<LabeledWindow> windows_with_sizes(const EventStream& stream,
                                              int fixed_n, const DwModel* model,
                                              bool skip_truncated) {
  std::vector<LabeledWindow> out;
  const auto& ev = stream.events;
  out.reserve(ev.size());
  for (std::size_t k = 0; k < ev.size(); ++k) {
    const int n = model ? model->window_size(ev[k].sensor) : fixed_n;
    const std::size_t len = std::min<std::size_t>(static_cast<std::size_t>(n), k + 1);
    if (skip_truncated && len < static_cast<std::size_t>(n)) continue;
    out.push_back({std::span<const SensorEvent>(ev.data() + (k + 1 - len), len)});
  }
  return out;
}

// Nearest grid value; ties -> smaller.
std::size_t snap_to_grid(const std::vector<int>& grid, std::int64_t value) {
  std::size_t best = 0;
  std::int64_t best_diff = std::abs(static_cast<std::int64_t>(grid[0]) - value);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const std::int64_t diff = std::abs(static_cast<std::int64_t>(grid[i]) - value);
    if (diff < best_diff) {
      best = i;
      best_diff = diff;
    }
  }
  return best;
}

}  // namespace

std::vector<LabeledWindow> event_windows(const EventStream& stream, int n,
                                         bool skip_truncated) {
  if (n < 1) throw Error("window size must be >= 1");
  return windows_with_sizes(stream, n, nullptr, skip_truncated);
}

DwModel DwModel::fit(const EventStream& train, const std::vector<int>& grid) {
  if (train.events.empty()) throw Error("DW fit requires a non-empty stream");
  if (grid.empty()) throw Error("DW fit requires a non-empty size grid");
  if (!std::is_sorted(grid.begin(), grid.end()))
    throw Error("DW size grid must be sorted ascending");

  DwModel m;
  m.grid_ = grid;
  m.per_sensor_.assign(train.registry.size(), std::vector<std::int64_t>(grid.size(), 0));
  m.global_.assign(grid.size(), 0);

  const auto& ev = train.events;
  std::size_t run_begin = 0;
  for (std::size_t i = 0; i <= ev.size(); ++i) {
    if (i == ev.size() || ev[i].label != ev[run_begin].label) {
      const std::int64_t run_len = static_cast<std::int64_t>(i - run_begin);
      const std::size_t g = snap_to_grid(grid, run_len);
      for (std::size_t k = run_begin; k < i; ++k) {
        m.per_sensor_[static_cast<std::size_t>(ev[k].sensor)][g] += 1;
        m.global_[g] += 1;
      }
      run_begin = i;
    }
  }
  return m;
}

int DwModel::window_size(SensorId sensor) const {
  const std::vector<std::int64_t>* hist = &global_;
  if (sensor >= 0 && static_cast<std::size_t>(sensor) < per_sensor_.size()) {
    const auto& h = per_sensor_[static_cast<std::size_t>(sensor)];
    if (std::any_of(h.begin(), h.end(), [](std::int64_t c) { return c > 0; }))
      hist = &h;
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < hist->size(); ++i)
    if ((*hist)[i] > (*hist)[best]) best = i;
  return grid_[best];
}

std::vector<LabeledWindow> dynamic_windows(const EventStream& stream,
                                           const DwModel& model,
                                           bool skip_truncated) {
  return windows_with_sizes(stream, 0, &model, skip_truncated);
}

std::string windows_to_jsonl(std::span<const LabeledWindow> windows,
                             const SensorRegistry& registry) {
  std::string out;
  for (const auto& w : windows) {
    nlohmann::ordered_json j;
    j["trigger"] = format_timestamp(w.trigger_timestamp());
    j["label"] = activity_name(w.label());
    auto& evs = j["events"] = nlohmann::ordered_json::array();
    for (const auto& e : w.events) {
      evs.push_back({{"t", format_timestamp(e.timestamp)},
                     {"sensor", registry.name(e.sensor)},
                     {"state", e.state == SensorState::On ? "ON" : "OFF"}});
    }
    out += j.dump();
    out += '\n';
  }
  return out;
}

}  // namespace har
