#include "har/mutual_info.hpp"

#include <algorithm>

#include <json.hpp>

namespace har {
namespace {

void check_sensor_range(std::span<const SensorEvent> events, int m) {
  for (const auto& e : events)
    if (e.sensor < 0 || e.sensor >= m)
      throw Error("sensor index " + std::to_string(e.sensor) +
                  " out of range (m=" + std::to_string(m) + ")");
}

MIMatrix from_pair_counts(const std::vector<std::int64_t>& counts, int m,
                          std::int64_t n) {
  MIMatrix mi = MIMatrix::zeros(m);
  mi.source_event_count = n;
  if (n <= 1) return mi;
  const double inv = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < counts.size(); ++i)
    mi.values[i] = static_cast<double>(counts[i]) * inv;
  return mi;
}

}  // namespace

MIMatrix MIMatrix::zeros(int m) {
  if (m < 1) throw Error("sensor count must be >= 1");
  MIMatrix mi;
  mi.m = m;
  mi.values.assign(static_cast<std::size_t>(m) * static_cast<std::size_t>(m), 0.0);
  return mi;
}

double MIMatrix::sum() const {
  double s = 0;
  for (double v : values) s += v;
  return s;
}

MIMatrix mi_global(std::span<const SensorEvent> events, int m) {
  check_sensor_range(events, m);
  std::vector<std::int64_t> counts(
      static_cast<std::size_t>(m) * static_cast<std::size_t>(m), 0);
  for (std::size_t t = 0; t + 1 < events.size(); ++t) {
    const auto i = static_cast<std::size_t>(events[t].sensor);
    const auto j = static_cast<std::size_t>(events[t + 1].sensor);
    counts[i * static_cast<std::size_t>(m) + j] += 1;
  }
  return from_pair_counts(counts, m, static_cast<std::int64_t>(events.size()));
}

const MIMatrix& TemporalMI::for_hour(double hour) const {
  switch (segment_of(hour, partition)) {
    case DaySegment::Morning: return morning;
    case DaySegment::Afternoon: return afternoon;
    default: return night;
  }
}

TemporalMI mi_temporal(std::span<const SensorEvent> events, int m,
                       const DayPartition& partition,
                       const TemporalMIOptions& opts) {
  if (!partition.valid()) throw Error("invalid day partition");
  check_sensor_range(events, m);

  TemporalMI out;
  out.partition = partition;
  for (int seg = 0; seg < 3; ++seg) {
    const DaySegment target = static_cast<DaySegment>(seg);
    std::vector<std::int64_t> counts(
        static_cast<std::size_t>(m) * static_cast<std::size_t>(m), 0);
    std::int64_t n_seg = 0;
    std::int64_t prev = -1;  // previous in-segment event index
    for (std::size_t t = 0; t < events.size(); ++t) {
      if (segment_of(hour_of_day(events[t].timestamp), partition) != target)
        continue;
      ++n_seg;
      if (prev >= 0 &&
          (!opts.adjacent_only || static_cast<std::size_t>(prev) + 1 == t)) {
        const auto i = static_cast<std::size_t>(events[static_cast<std::size_t>(prev)].sensor);
        const auto j = static_cast<std::size_t>(events[t].sensor);
        counts[i * static_cast<std::size_t>(m) + j] += 1;
      }
      prev = static_cast<std::int64_t>(t);
    }
    MIMatrix mi = from_pair_counts(counts, m, n_seg);
    switch (target) {
      case DaySegment::Morning: out.morning = std::move(mi); break;
      case DaySegment::Afternoon: out.afternoon = std::move(mi); break;
      case DaySegment::Night: out.night = std::move(mi); break;
    }
  }
  return out;
}

MIMatrix mi_cooccurrence(std::span<const LabeledWindow> windows, int m) {
  if (windows.empty()) throw Error("mi_cooccurrence requires windows");
  std::vector<std::int64_t> counts(
      static_cast<std::size_t>(m) * static_cast<std::size_t>(m), 0);
  std::vector<SensorId> present;
  std::vector<bool> seen(static_cast<std::size_t>(m), false);
  for (const auto& w : windows) {
    present.clear();
    for (const auto& e : w.events) {
      if (e.sensor < 0 || e.sensor >= m)
        throw Error("sensor index out of range in window");
      if (!seen[static_cast<std::size_t>(e.sensor)]) {
        seen[static_cast<std::size_t>(e.sensor)] = true;
        present.push_back(e.sensor);
      }
    }
    for (SensorId a : present)
      for (SensorId b : present)
        counts[static_cast<std::size_t>(a) * static_cast<std::size_t>(m) +
               static_cast<std::size_t>(b)] += 1;
    for (SensorId s : present) seen[static_cast<std::size_t>(s)] = false;
  }
  MIMatrix mi = MIMatrix::zeros(m);
  mi.source_event_count = static_cast<std::int64_t>(windows.size());
  const double inv = 1.0 / static_cast<double>(windows.size());
  for (std::size_t i = 0; i < counts.size(); ++i)
    mi.values[i] = static_cast<double>(counts[i]) * inv;
  return mi;
}

MIMatrix mi_activity(const EventStream& train, int m) {
  check_sensor_range(train.events, m);
  const auto& ev = train.events;
  std::vector<std::int64_t> counts(
      static_cast<std::size_t>(m) * static_cast<std::size_t>(m), 0);
  std::int64_t non_other = 0;
  if (ev.empty()) return from_pair_counts(counts, m, 0);
  std::size_t run_begin = 0;
  for (std::size_t i = 1; i <= ev.size(); ++i) {
    if (i < ev.size() && ev[i].label == ev[run_begin].label) continue;
    if (ev[run_begin].label != Activity::Other) {
      non_other += static_cast<std::int64_t>(i - run_begin);
      for (std::size_t t = run_begin; t + 1 < i; ++t) {
        const auto a = static_cast<std::size_t>(ev[t].sensor);
        const auto b = static_cast<std::size_t>(ev[t + 1].sensor);
        counts[a * static_cast<std::size_t>(m) + b] += 1;
      }
    }
    run_begin = i;
  }
  return from_pair_counts(counts, m, non_other);
}

std::string mi_to_json(const MIMatrix& mi, const std::vector<std::string>& labels) {
  nlohmann::ordered_json j;
  j["m"] = mi.m;
  j["n"] = mi.source_event_count;
  j["labels"] = labels;
  auto& rows = j["rows"] = nlohmann::ordered_json::array();
  for (int i = 0; i < mi.m; ++i) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (int k = 0; k < mi.m; ++k) row.push_back(mi.at(i, k));
    rows.push_back(std::move(row));
  }
  return j.dump();
}

MIMatrix mi_from_json(std::string_view text, std::vector<std::string>* labels) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("invalid MI matrix JSON: ") + e.what());
  }
  if (!j.contains("m") || !j.contains("rows"))
    throw Error("MI matrix JSON missing 'm' or 'rows'");
  MIMatrix mi = MIMatrix::zeros(j["m"].get<int>());
  mi.source_event_count = j.value("n", std::int64_t{0});
  const auto& rows = j["rows"];
  if (static_cast<int>(rows.size()) != mi.m)
    throw Error("MI matrix JSON row count mismatch");
  for (int i = 0; i < mi.m; ++i) {
    if (static_cast<int>(rows[static_cast<std::size_t>(i)].size()) != mi.m)
      throw Error("MI matrix JSON column count mismatch");
    for (int k = 0; k < mi.m; ++k)
      mi.at(i, k) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)].get<double>();
  }
  if (labels && j.contains("labels"))
    *labels = j["labels"].get<std::vector<std::string>>();
  return mi;
}

}  // namespace har
