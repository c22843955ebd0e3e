#include "har/events.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace har {
namespace {

constexpr std::array<std::string_view, kActivityCount> kActivityNames = {
    "Bathing",      "Bed_to_Toilet",    "Cook",  "Eat",
    "Enter_Home",   "Leave_Home",       "Personal_Hygiene",
    "Relax",        "Sleep",            "Take_Medicine",
    "Wash_Dishes",  "Work",             "Other",
};

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

bool iequals(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    char x = a[i], y = b[i];
    if (x >= 'A' && x <= 'Z') x = static_cast<char>(x - 'A' + 'a');
    if (y >= 'A' && y <= 'Z') y = static_cast<char>(y - 'A' + 'a');
    if (x != y) return false;
  }
  return true;
}

bool is_numeric(std::string_view s) {
  if (s.empty()) return false;
  double v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  return ec == std::errc() && p == s.data() + s.size();
}

}  // namespace

std::string_view activity_name(Activity a) {
  return kActivityNames[static_cast<std::size_t>(a)];
}

std::optional<Activity> activity_from_name(std::string_view name) {
  for (int i = 0; i < kActivityCount; ++i)
    if (kActivityNames[static_cast<std::size_t>(i)] == name)
      return static_cast<Activity>(i);
  return std::nullopt;
}

SensorId SensorRegistry::id_for(const std::string& name) {
  auto it = index_.find(name);
  if (it != index_.end()) return it->second;
  const SensorId id = static_cast<SensorId>(names_.size());
  names_.push_back(name);
  index_.emplace(name, id);
  return id;
}

std::optional<SensorId> SensorRegistry::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  return it == index_.end() ? std::nullopt : std::optional<SensorId>(it->second);
}

const std::string& SensorRegistry::name(SensorId id) const {
  return names_.at(static_cast<std::size_t>(id));
}

LabelMap LabelMap::defaults() {
  LabelMap m;
  for (int i = 0; i < kActivityCount; ++i) {
    const Activity a = static_cast<Activity>(i);
    m.add(std::string(activity_name(a)), a);
  }
  // Common CASAS raw vocabularies (Aruba, TM/HH kits). Overridable per
  // dataset via a label-map file.
  m.add("Meal_Preparation", Activity::Cook);
  m.add("Sleeping", Activity::Sleep);
  m.add("Cook_Breakfast", Activity::Cook);
  m.add("Cook_Lunch", Activity::Cook);
  m.add("Cook_Dinner", Activity::Cook);
  m.add("Eat_Breakfast", Activity::Eat);
  m.add("Eat_Lunch", Activity::Eat);
  m.add("Eat_Dinner", Activity::Eat);
  m.add("Wash_Breakfast_Dishes", Activity::WashDishes);
  m.add("Wash_Lunch_Dishes", Activity::WashDishes);
  m.add("Wash_Dinner_Dishes", Activity::WashDishes);
  m.add("Bathe", Activity::Bathing);
  m.add("Bed_Toilet_Transition", Activity::BedToToilet);
  m.add("Watch_TV", Activity::Relax);
  m.add("Read", Activity::Relax);
  m.add("Morning_Meds", Activity::TakeMedicine);
  m.add("Evening_Meds", Activity::TakeMedicine);
  m.add("Groom", Activity::PersonalHygiene);
  m.add("Toilet", Activity::PersonalHygiene);
  m.add("Work_At_Table", Activity::Work);
  return m;
}

LabelMap LabelMap::parse(std::string_view text) {
  LabelMap m;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    const auto tokens = split_ws(line);
    if (tokens.empty()) continue;
    if (tokens.size() != 2)
      throw ConfigError("label map line " + std::to_string(line_no) +
                        ": expected 'raw canonical'");
    const auto canonical = activity_from_name(tokens[1]);
    if (!canonical)
      throw ConfigError("label map line " + std::to_string(line_no) +
                        ": unknown canonical class '" + std::string(tokens[1]) +
                        "'");
    m.add(std::string(tokens[0]), *canonical);
  }
  return m;
}

LabelMap LabelMap::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open label map file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

void LabelMap::add(std::string raw, Activity canonical) {
  map_[std::move(raw)] = canonical;
}

Activity LabelMap::canonical(std::string_view raw) const {
  auto it = map_.find(std::string(raw));
  if (it != map_.end()) return it->second;
  if (auto direct = activity_from_name(raw)) return *direct;
  return Activity::Other;
}

ParsedLine parse_casas_line(std::string_view line, SensorRegistry& registry) {
  const auto tokens = split_ws(line);
  if (tokens.size() < 4)
    throw Error("expected at least 4 fields (date time sensor value), got " +
                std::to_string(tokens.size()));
  ParsedLine out;
  if (!parse_timestamp(tokens[0], tokens[1], out.timestamp))
    throw Error("malformed date/time '" + std::string(tokens[0]) + " " +
                std::string(tokens[1]) + "'");

  const std::string_view value = tokens[3];
  if (value == "ON" || value == "OPEN") {
    out.state = SensorState::On;
  } else if (value == "OFF" || value == "CLOSE") {
    out.state = SensorState::Off;
  } else if (is_numeric(value)) {
    out.state = SensorState::On;  // analog readings count as activations
  } else {
    throw Error("unrecognized sensor value '" + std::string(value) + "'");
  }

  if ((tokens.size() - 4) % 2 != 0)
    throw Error("dangling annotation token '" + std::string(tokens.back()) +
                "'");
  for (std::size_t i = 4; i < tokens.size(); i += 2) {
    ParsedAnnotation a;
    a.activity = std::string(tokens[i]);
    if (iequals(tokens[i + 1], "begin"))
      a.begin = true;
    else if (iequals(tokens[i + 1], "end"))
      a.begin = false;
    else
      throw Error("annotation marker must be begin|end, got '" +
                  std::string(tokens[i + 1]) + "'");
    out.annotations.push_back(std::move(a));
  }

  out.sensor = registry.id_for(std::string(tokens[2]));
  return out;
}

namespace {

struct NumberedLine {
  ParsedLine parsed;
  std::size_t line_no;
};

LoadResult label_and_build(std::vector<NumberedLine> lines, SensorRegistry registry,
                           const LabelMap& map, std::vector<ParseIssue> errors) {
  LoadResult result;
  result.parse_errors = std::move(errors);

  if (!std::is_sorted(lines.begin(), lines.end(),
                      [](const NumberedLine& a, const NumberedLine& b) {
                        return a.parsed.timestamp < b.parsed.timestamp;
                      })) {
    result.warnings.push_back("events out of chronological order; stably sorted by timestamp");
    std::stable_sort(lines.begin(), lines.end(),
                     [](const NumberedLine& a, const NumberedLine& b) {
                       return a.parsed.timestamp < b.parsed.timestamp;
                     });
  }

  struct OpenActivity {
    std::string raw;
    Activity canonical;
  };
  std::vector<OpenActivity> open;

  result.stream.registry = std::move(registry);
  result.stream.events.reserve(lines.size());
  std::size_t other_count = 0;

  for (const auto& nl : lines) {
    const ParsedLine& pl = nl.parsed;
    // Begins take effect before the event is labeled, ends after; annotation
    // lines are therefore inside their interval.
    for (const auto& a : pl.annotations)
      if (a.begin) open.push_back({a.activity, map.canonical(a.activity)});

    SensorEvent ev;
    ev.timestamp = pl.timestamp;
    ev.sensor = pl.sensor;
    ev.state = pl.state;
    ev.label = open.empty() ? Activity::Other : open.back().canonical;
    if (ev.label == Activity::Other) ++other_count;
    result.stream.events.push_back(ev);

    for (const auto& a : pl.annotations) {
      if (a.begin) continue;
      auto it = std::find_if(open.rbegin(), open.rend(),
                             [&](const OpenActivity& o) { return o.raw == a.activity; });
      if (it == open.rend()) {
        result.warnings.push_back("line " + std::to_string(nl.line_no) +
                                  ": '" + a.activity +
                                  " end' without matching begin; ignored");
      } else {
        open.erase(std::next(it).base());
      }
    }
  }

  for (const auto& o : open)
    result.warnings.push_back("'" + o.raw +
                              " begin' without matching end; interval closed at end of file");

  result.other_fraction =
      result.stream.events.empty()
          ? 0.0
          : static_cast<double>(other_count) / static_cast<double>(result.stream.events.size());
  return result;
}

LoadResult load_lines(std::istream& in, const LabelMap& map) {
  SensorRegistry registry;
  std::vector<NumberedLine> lines;
  std::vector<ParseIssue> errors;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (split_ws(line).empty()) continue;
    try {
      lines.push_back({parse_casas_line(line, registry), line_no});
    } catch (const Error& e) {
      errors.push_back({line_no, e.what()});
    }
  }
  return label_and_build(std::move(lines), std::move(registry), map, std::move(errors));
}

}  // namespace

LoadResult load_dataset(const std::string& path, const LabelMap& map) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open dataset file: " + path);
  return load_lines(in, map);
}

LoadResult load_dataset_text(std::string_view text, const LabelMap& map) {
  std::istringstream in{std::string(text)};
  return load_lines(in, map);
}

Splits temporal_split(const EventStream& stream, const SplitRatios& ratios) {
  const double sum = ratios.train + ratios.validation + ratios.test;
  if (ratios.train <= 0 || ratios.validation <= 0 || ratios.test <= 0)
    throw Error("split ratios must be positive");
  if (std::abs(sum - 1.0) > 1e-9)
    throw Error("split ratios must sum to 1");
  const std::size_t n = stream.events.size();
  if (n < 3)
    throw Error("cannot form three non-empty splits from " + std::to_string(n) +
                " events");

  std::size_t n1 = static_cast<std::size_t>(
      std::llround(ratios.train * static_cast<double>(n)));
  std::size_t n2 = static_cast<std::size_t>(
      std::llround(ratios.validation * static_cast<double>(n)));
  if (n1 > n) n1 = n;
  if (n1 + n2 > n) n2 = n - n1;
  const std::size_t n3 = n - n1 - n2;
  if (n1 == 0 || n2 == 0 || n3 == 0)
    throw Error("split ratios produce an empty split for " + std::to_string(n) +
                " events");

  Splits s;
  auto take = [&](std::size_t begin, std::size_t count) {
    EventStream out;
    out.registry = stream.registry;
    out.events.assign(stream.events.begin() + static_cast<std::ptrdiff_t>(begin),
                      stream.events.begin() + static_cast<std::ptrdiff_t>(begin + count));
    return out;
  };
  s.train = take(0, n1);
  s.validation = take(n1, n2);
  s.test = take(n1 + n2, n3);
  return s;
}

std::string serialize_casas(const EventStream& stream) {
  std::string out;
  const auto& ev = stream.events;
  for (std::size_t i = 0; i < ev.size(); ++i) {
    const bool run_start = i == 0 || ev[i - 1].label != ev[i].label;
    const bool run_end = i + 1 == ev.size() || ev[i + 1].label != ev[i].label;
    out += format_timestamp(ev[i].timestamp);
    out += ' ';
    out += stream.registry.name(ev[i].sensor);
    out += ev[i].state == SensorState::On ? " ON" : " OFF";
    if (ev[i].label != Activity::Other) {
      const std::string_view name = activity_name(ev[i].label);
      if (run_start) {
        out += ' ';
        out += name;
        out += " begin";
      }
      if (run_end) {
        out += ' ';
        out += name;
        out += " end";
      }
    }
    out += '\n';
  }
  return out;
}

double other_fraction(const EventStream& stream) {
  if (stream.events.empty()) return 0.0;
  std::size_t n = 0;
  for (const auto& e : stream.events)
    if (e.label == Activity::Other) ++n;
  return static_cast<double>(n) / static_cast<double>(stream.events.size());
}

EventStream limit_to_days(const EventStream& stream, int days) {
  if (days <= 0 || stream.events.empty()) return stream;
  const Micros cutoff =
      stream.events.front().timestamp + static_cast<Micros>(days) * kMicrosPerDay;
  EventStream out;
  out.registry = stream.registry;
  for (const auto& e : stream.events)
    if (e.timestamp < cutoff) out.events.push_back(e);
  return out;
}

}  // namespace har
