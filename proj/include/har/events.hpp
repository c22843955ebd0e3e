#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "har/errors.hpp"
#include "har/time_utils.hpp"

namespace har {

enum class SensorState : std::uint8_t { Off = 0, On = 1 };

/// Canonical activity classes, in the fixed reporting order.
enum class Activity : std::uint8_t {
  Bathing = 0,
  BedToToilet,
  Cook,
  Eat,
  EnterHome,
  LeaveHome,
  PersonalHygiene,
  Relax,
  Sleep,
  TakeMedicine,
  WashDishes,
  Work,
  Other,
};

inline constexpr int kActivityCount = 13;

std::string_view activity_name(Activity a);
std::optional<Activity> activity_from_name(std::string_view name);
inline int activity_index(Activity a) { return static_cast<int>(a); }

using SensorId = std::int32_t;

/// One timestamped binary sensor firing; the atomic stream unit.
struct SensorEvent {
  Micros timestamp = 0;
  SensorId sensor = 0;
  SensorState state = SensorState::On;
  Activity label = Activity::Other;

  bool operator==(const SensorEvent&) const = default;
};

/// Ordered sensor-name table; index is the SensorId used everywhere else.
class SensorRegistry {
 public:
  SensorId id_for(const std::string& name);  // registers unseen names
  std::optional<SensorId> find(std::string_view name) const;
  const std::string& name(SensorId id) const;
  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  bool operator==(const SensorRegistry& o) const { return names_ == o.names_; }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, SensorId> index_;
};

/// Raw label -> canonical class aggregation table. Lookups fall back to a
/// direct canonical-name match, then to Other.
class LabelMap {
 public:
  static LabelMap defaults();
  static LabelMap load(const std::string& path);
  static LabelMap parse(std::string_view text);

  void add(std::string raw, Activity canonical);
  Activity canonical(std::string_view raw) const;
  std::size_t size() const { return map_.size(); }

 private:
  std::unordered_map<std::string, Activity> map_;
};

struct EventStream {
  std::vector<SensorEvent> events;
  SensorRegistry registry;

  int sensor_count() const { return static_cast<int>(registry.size()); }
  std::size_t size() const { return events.size(); }
};

struct ParsedAnnotation {
  std::string activity;
  bool begin = false;
};

struct ParsedLine {
  Micros timestamp = 0;
  SensorId sensor = 0;
  SensorState state = SensorState::On;
  std::vector<ParsedAnnotation> annotations;  // in line order
};

struct ParseIssue {
  std::size_t line_no = 0;
  std::string message;
};

/// Decodes one whitespace-delimited CASAS line: date, time, sensor, value,
/// then optional (activity, begin|end) annotation pairs. Registers unseen
/// sensor names. ON/OPEN -> On, OFF/CLOSE -> Off, numeric readings -> On
/// activation. Throws Error on malformed input.
ParsedLine parse_casas_line(std::string_view line, SensorRegistry& registry);

struct LoadResult {
  EventStream stream;
  std::vector<ParseIssue> parse_errors;  // collected, never fatal
  std::vector<std::string> warnings;
  double other_fraction = 0.0;
};

LoadResult load_dataset(const std::string& path, const LabelMap& map);
LoadResult load_dataset_text(std::string_view text, const LabelMap& map);

struct SplitRatios {
  double train = 0.70;
  double validation = 0.15;
  double test = 0.15;
};

struct Splits {
  EventStream train;
  EventStream validation;
  EventStream test;
};

/// Chronological three-way split: |train| = round(r1*n), |val| = round(r2*n)
/// clamped to the remainder, test = rest. Throws Error when a split would be
/// empty.
Splits temporal_split(const EventStream& stream, const SplitRatios& ratios);

/// Writes the stream back to CASAS text with begin/end markers at
/// same-label run boundaries (Other runs stay unannotated).
std::string serialize_casas(const EventStream& stream);

double other_fraction(const EventStream& stream);

/// Keeps only events within `days` days of the first event. 0 = no limit.
EventStream limit_to_days(const EventStream& stream, int days);

}  // namespace har
