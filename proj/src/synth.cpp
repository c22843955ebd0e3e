#include "har/synth.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

namespace har {

std::uint64_t Rng::uniform_int(std::uint64_t n) {
  if (n == 0) throw Error("uniform_int(0)");
  const std::uint64_t bound = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= bound);
  return x % n;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream_index) {
  // splitmix64 scramble of (seed, index)
  std::uint64_t z = seed ^ (0x9E3779B97F4A7C15ULL * (stream_index + 1));
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& obj, std::initializer_list<const char*> allowed,
                         const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    if (std::find_if(allowed.begin(), allowed.end(), [&](const char* a) {
          return key == a;
        }) == allowed.end())
      throw ConfigError("unknown key '" + key + "' in " + where);
  }
}

}  // namespace

RoutineSpec routine_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid routine spec JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("routine spec must be a JSON object");
  reject_unknown_keys(j,
                      {"seed", "days", "start_date", "sensors", "noise_density",
                       "start_jitter_minutes", "activities"},
                      "routine spec");
  RoutineSpec spec;
  try {
    spec.seed = j.value("seed", std::uint64_t{0});
    spec.days = j.value("days", 1);
    spec.start_date = j.value("start_date", std::string("2024-01-01"));
    spec.sensors = j.at("sensors").get<std::vector<std::string>>();
    spec.noise_density = j.value("noise_density", 0.10);
    spec.start_jitter_minutes = j.value("start_jitter_minutes", 0.0);
    for (const auto& a : j.at("activities")) {
      reject_unknown_keys(a,
                          {"label", "start_hour", "duration_minutes", "sensors",
                           "events_per_minute"},
                          "activity spec");
      ActivitySpec as;
      const auto label = activity_from_name(a.at("label").get<std::string>());
      if (!label)
        throw ConfigError("activity label '" + a.at("label").get<std::string>() +
                          "' is not a canonical class");
      as.label = *label;
      const auto sh = a.at("start_hour");
      if (!sh.is_array() || sh.size() != 2)
        throw ConfigError("start_hour must be [min,max]");
      as.start_hour_min = sh[0].get<double>();
      as.start_hour_max = sh[1].get<double>();
      const auto dur = a.at("duration_minutes");
      if (!dur.is_array() || dur.size() != 2)
        throw ConfigError("duration_minutes must be [min,max]");
      as.duration_minutes_min = dur[0].get<double>();
      as.duration_minutes_max = dur[1].get<double>();
      as.sensors = a.at("sensors").get<std::vector<std::string>>();
      as.events_per_minute = a.value("events_per_minute", 1.0);
      spec.activities.push_back(std::move(as));
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("routine spec: ") + e.what());
  }
  return spec;
}

RoutineSpec routine_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open routine spec: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return routine_from_json(buf.str());
}

namespace {

void validate(const RoutineSpec& spec) {
  if (spec.days < 1) throw ConfigError("routine spec: days must be >= 1");
  if (spec.sensors.empty()) throw ConfigError("routine spec: sensors required");
  std::unordered_set<std::string> known(spec.sensors.begin(), spec.sensors.end());
  if (known.size() != spec.sensors.size())
    throw ConfigError("routine spec: duplicate sensor names");
  if (spec.noise_density < 0 || spec.noise_density >= 1)
    throw ConfigError("routine spec: noise_density must be in [0,1)");
  if (spec.activities.empty())
    throw ConfigError("routine spec: at least one activity required");
  for (const auto& a : spec.activities) {
    if (a.sensors.empty())
      throw ConfigError("routine spec: activity has an empty sensor pool");
    for (const auto& s : a.sensors)
      if (!known.count(s))
        throw ConfigError("routine spec: activity references unknown sensor '" + s +
                          "'");
    if (a.start_hour_min < 0 || a.start_hour_max >= 24 ||
        a.start_hour_min > a.start_hour_max)
      throw ConfigError("routine spec: start_hour window must satisfy 0 <= min <= max < 24");
    if (a.duration_minutes_min <= 0 || a.duration_minutes_max < a.duration_minutes_min)
      throw ConfigError("routine spec: duration range must be positive");
    if (a.events_per_minute <= 0)
      throw ConfigError("routine spec: events_per_minute must be positive");
  }
}

struct Interval {
  Micros begin, end;
};

}  // namespace

EventStream generate(const RoutineSpec& spec) {
  validate(spec);

  EventStream stream;
  std::vector<SensorId> sensor_ids;
  for (const auto& name : spec.sensors)
    sensor_ids.push_back(stream.registry.id_for(name));

  Micros day0 = 0;
  if (!parse_date(spec.start_date, day0))
    throw ConfigError("routine spec: malformed start_date '" + spec.start_date + "'");

  std::vector<SensorEvent> events;
  std::vector<int> toggle(spec.sensors.size(), 0);

  for (int day = 0; day < spec.days; ++day) {
    Rng rng(derive_seed(spec.seed, static_cast<std::uint64_t>(day)));
    const Micros base = day0 + static_cast<Micros>(day) * kMicrosPerDay;
    std::vector<Interval> occupied;
    std::size_t day_activity_events = 0;

    auto push_event = [&](Micros ts, SensorId sensor, Activity label) {
      SensorEvent e;
      e.timestamp = ts;
      e.sensor = sensor;
      const auto s = static_cast<std::size_t>(sensor);
      e.state = toggle[s] == 0 ? SensorState::On : SensorState::Off;
      toggle[s] ^= 1;
      e.label = label;
      events.push_back(e);
    };

    for (const auto& act : spec.activities) {
      double start_h = rng.uniform(act.start_hour_min, act.start_hour_max);
      if (spec.start_jitter_minutes > 0)
        start_h += rng.uniform(-spec.start_jitter_minutes, spec.start_jitter_minutes) / 60.0;
      start_h = std::clamp(start_h, 0.0, 24.0 - 1e-9);
      const double duration_min =
          rng.uniform(act.duration_minutes_min, act.duration_minutes_max);
      const Micros start = base + static_cast<Micros>(std::llround(start_h * 3600.0 * kMicrosPerSecond));
      const Micros duration =
          static_cast<Micros>(std::llround(duration_min * 60.0 * kMicrosPerSecond));
      occupied.push_back({start, start + duration});

      const auto count = static_cast<std::size_t>(
          std::max<std::int64_t>(1, std::llround(duration_min * act.events_per_minute)));
      std::vector<Micros> offsets(count);
      for (auto& o : offsets)
        o = static_cast<Micros>(std::llround(rng.uniform() * static_cast<double>(duration)));
      std::sort(offsets.begin(), offsets.end());
      for (Micros o : offsets) {
        const auto pick = act.sensors[rng.uniform_int(act.sensors.size())];
        push_event(start + o, *stream.registry.find(pick), act.label);
        ++day_activity_events;
      }
    }

    if (spec.noise_density > 0 && day_activity_events > 0) {
      const auto noise_count = static_cast<std::size_t>(std::llround(
          spec.noise_density / (1.0 - spec.noise_density) *
          static_cast<double>(day_activity_events)));
      std::size_t placed = 0, attempts = 0;
      const std::size_t max_attempts = 100 * (noise_count + 1);
      while (placed < noise_count && attempts < max_attempts) {
        ++attempts;
        const Micros t =
            base + static_cast<Micros>(std::llround(rng.uniform() * static_cast<double>(kMicrosPerDay - 1)));
        const bool inside = std::any_of(occupied.begin(), occupied.end(),
                                        [&](const Interval& iv) {
                                          return t >= iv.begin && t < iv.end;
                                        });
        if (inside) continue;
        push_event(t, sensor_ids[rng.uniform_int(sensor_ids.size())], Activity::Other);
        ++placed;
      }
    }
  }

  std::stable_sort(events.begin(), events.end(),
                   [](const SensorEvent& a, const SensorEvent& b) {
                     return a.timestamp < b.timestamp;
                   });
  stream.events = std::move(events);
  return stream;
}

}  // namespace har
