#include <doctest.h>

#include <random>

#include "har/events.hpp"
#include "test_support.hpp"

using namespace har;

TEST_CASE("parse_casas_line decodes event and annotation") {
  SensorRegistry reg;
  const auto p =
      parse_casas_line("2010-11-04 00:03:50.209589 M003 ON Sleeping begin", reg);
  CHECK(reg.name(p.sensor) == "M003");
  CHECK(p.state == SensorState::On);
  REQUIRE(p.annotations.size() == 1);
  CHECK(p.annotations[0].activity == "Sleeping");
  CHECK(p.annotations[0].begin);
}

TEST_CASE("parse_casas_line without annotation") {
  SensorRegistry reg;
  const auto p = parse_casas_line("2010-11-04 05:40:51.303739 M004 OFF", reg);
  CHECK(reg.name(p.sensor) == "M004");
  CHECK(p.state == SensorState::Off);
  CHECK(p.annotations.empty());
}

TEST_CASE("parse_casas_line error cases") {
  SensorRegistry reg;
  CHECK_THROWS_AS(parse_casas_line("2010-11-04 garbage", reg), Error);
  CHECK_THROWS_AS(parse_casas_line("2010-11-04 00:00:00 M1", reg), Error);
  CHECK_THROWS_AS(parse_casas_line("2010-45-04 00:00:00 M1 ON", reg), Error);
  CHECK_THROWS_AS(parse_casas_line("2010-11-04 00:00:00 M1 MAYBE", reg), Error);
  CHECK_THROWS_AS(parse_casas_line("2010-11-04 00:00:00 M1 ON Sleeping", reg), Error);
  CHECK_THROWS_AS(parse_casas_line("2010-11-04 00:00:00 M1 ON Sleeping middle", reg),
                  Error);
}

TEST_CASE("value mapping: OPEN/CLOSE and numeric readings") {
  SensorRegistry reg;
  CHECK(parse_casas_line("2010-11-04 00:00:00 D1 OPEN", reg).state == SensorState::On);
  CHECK(parse_casas_line("2010-11-04 00:00:00 D1 CLOSE", reg).state == SensorState::Off);
  CHECK(parse_casas_line("2010-11-04 00:00:00 T1 21.5", reg).state == SensorState::On);
}

TEST_CASE("load_dataset labels the inclusive annotation interval") {
  const char* text =
      "2010-11-04 00:03:50.209589 M003 ON Sleeping begin\n"
      "2010-11-04 00:03:57.399391 M002 ON\n"
      "2010-11-04 00:15:08.984841 M007 ON\n"
      "2010-11-04 05:40:51.303739 M004 OFF Sleeping end\n"
      "2010-11-04 05:43:30.279021 M005 ON\n";
  const auto r = load_dataset_text(text, LabelMap::defaults());
  REQUIRE(r.stream.size() == 5);
  CHECK(r.parse_errors.empty());
  CHECK(r.warnings.empty());
  for (int i = 0; i < 4; ++i)
    CHECK(r.stream.events[static_cast<std::size_t>(i)].label == Activity::Sleep);
  CHECK(r.stream.events[4].label == Activity::Other);
  CHECK(r.other_fraction == doctest::Approx(0.2));
}

TEST_CASE("load_dataset empty file") {
  const auto r = load_dataset_text("", LabelMap::defaults());
  CHECK(r.stream.events.empty());
  CHECK(r.parse_errors.empty());
}

TEST_CASE("raw label aggregation maps Cook_* to Cook") {
  LabelMap map;
  map.add("Cook_Breakfast", Activity::Cook);
  map.add("Cook_Dinner", Activity::Cook);
  const char* text =
      "2010-11-04 08:00:00 M001 ON Cook_Breakfast begin\n"
      "2010-11-04 08:00:05 M002 ON Cook_Breakfast end\n"
      "2010-11-04 18:00:00 M001 ON Cook_Dinner begin\n"
      "2010-11-04 18:00:05 M002 ON Cook_Dinner end\n";
  const auto r = load_dataset_text(text, map);
  REQUIRE(r.stream.size() == 4);
  for (const auto& e : r.stream.events) CHECK(e.label == Activity::Cook);
}

TEST_CASE("unmapped raw labels fall to Other") {
  const char* text =
      "2010-11-04 08:00:00 M001 ON Juggling begin\n"
      "2010-11-04 08:00:05 M002 ON Juggling end\n";
  const auto r = load_dataset_text(text, LabelMap::defaults());
  REQUIRE(r.stream.size() == 2);
  CHECK(r.stream.events[0].label == Activity::Other);
}

TEST_CASE("begin without end closes at EOF with a warning") {
  const char* text =
      "2010-11-04 08:00:00 M001 ON Eat begin\n"
      "2010-11-04 08:00:05 M002 ON\n";
  const auto r = load_dataset_text(text, LabelMap::defaults());
  CHECK(r.stream.events[0].label == Activity::Eat);
  CHECK(r.stream.events[1].label == Activity::Eat);
  REQUIRE(r.warnings.size() == 1);
  CHECK(r.warnings[0].find("without matching end") != std::string::npos);
}

TEST_CASE("end without begin is ignored with a warning") {
  const char* text = "2010-11-04 08:00:00 M001 ON Eat end\n";
  const auto r = load_dataset_text(text, LabelMap::defaults());
  CHECK(r.stream.events[0].label == Activity::Other);  // marker ignored
  REQUIRE(r.warnings.size() == 1);
  CHECK(r.warnings[0].find("without matching begin") != std::string::npos);
}

TEST_CASE("overlapping annotations: innermost begin wins") {
  const char* text =
      "2010-11-04 08:00:00 M001 ON Eat begin\n"
      "2010-11-04 08:00:01 M002 ON Relax begin\n"
      "2010-11-04 08:00:02 M003 ON\n"
      "2010-11-04 08:00:03 M004 ON Relax end\n"
      "2010-11-04 08:00:04 M005 ON\n"
      "2010-11-04 08:00:05 M006 ON Eat end\n";
  const auto r = load_dataset_text(text, LabelMap::defaults());
  CHECK(r.stream.events[0].label == Activity::Eat);
  CHECK(r.stream.events[1].label == Activity::Relax);
  CHECK(r.stream.events[2].label == Activity::Relax);
  CHECK(r.stream.events[3].label == Activity::Relax);
  CHECK(r.stream.events[4].label == Activity::Eat);
  CHECK(r.stream.events[5].label == Activity::Eat);
}

TEST_CASE("out-of-order lines are stably sorted with a warning") {
  const char* text =
      "2010-11-04 09:00:00 M002 ON\n"
      "2010-11-04 08:00:00 M001 ON\n";
  const auto r = load_dataset_text(text, LabelMap::defaults());
  REQUIRE(r.warnings.size() == 1);
  CHECK(r.warnings[0].find("chronological") != std::string::npos);
  CHECK(r.stream.registry.name(r.stream.events[0].sensor) == "M001");
}

TEST_CASE("parse errors are collected, not fatal") {
  const char* text =
      "2010-11-04 08:00:00 M001 ON\n"
      "not an event line\n"
      "2010-11-04 08:00:01 M002 ON\n";
  const auto r = load_dataset_text(text, LabelMap::defaults());
  CHECK(r.stream.size() == 2);
  REQUIRE(r.parse_errors.size() == 1);
  CHECK(r.parse_errors[0].line_no == 2);
}

TEST_CASE("label map file parsing") {
  const auto map = LabelMap::parse(
      "# comment\n"
      "Meal_Preparation Cook\n"
      "Sleeping Sleep  # trailing comment\n"
      "\n");
  CHECK(map.canonical("Meal_Preparation") == Activity::Cook);
  CHECK(map.canonical("Sleeping") == Activity::Sleep);
  CHECK(map.canonical("Cook") == Activity::Cook);     // canonical passthrough
  CHECK(map.canonical("Unknown") == Activity::Other); // fallback
  CHECK_THROWS_AS(LabelMap::parse("Raw NotACanonicalClass\n"), ConfigError);
  CHECK_THROWS_AS(LabelMap::parse("one two three\n"), ConfigError);
}

TEST_CASE("temporal_split rounding rule") {
  SUBCASE("10 events 70/15/15 -> 7/2/1") {
    const auto s = temporal_split(test::stream_of_sensors({0,0,0,0,0,0,0,0,0,0}, 1),
                                  {0.7, 0.15, 0.15});
    CHECK(s.train.size() == 7);
    CHECK(s.validation.size() == 2);
    CHECK(s.test.size() == 1);
  }
  SUBCASE("100 events -> 70/15/15") {
    std::vector<int> sensors(100, 0);
    const auto s = temporal_split(test::stream_of_sensors(sensors, 1), {0.7, 0.15, 0.15});
    CHECK(s.train.size() == 70);
    CHECK(s.validation.size() == 15);
    CHECK(s.test.size() == 15);
  }
  SUBCASE("3 events thirds -> 1/1/1") {
    const auto s = temporal_split(test::stream_of_sensors({0, 0, 0}, 1),
                                  {1.0 / 3, 1.0 / 3, 1.0 / 3});
    CHECK(s.train.size() == 1);
    CHECK(s.validation.size() == 1);
    CHECK(s.test.size() == 1);
  }
  SUBCASE("fewer than 3 events errors") {
    CHECK_THROWS_AS(temporal_split(test::stream_of_sensors({0, 0}, 1), {0.7, 0.15, 0.15}),
                    Error);
  }
  SUBCASE("invalid ratios error") {
    const auto s = test::stream_of_sensors({0, 0, 0, 0}, 1);
    CHECK_THROWS_AS(temporal_split(s, {0.5, 0.5, 0.5}), Error);
    CHECK_THROWS_AS(temporal_split(s, {1.0, 0.0, 0.0}), Error);
  }
}

TEST_CASE("splits concatenate back to the original sequence") {
  std::mt19937 rng(11);
  std::vector<SensorEvent> events;
  for (int i = 0; i < 57; ++i)
    events.push_back(test::ev(0, static_cast<int>(rng() % 4),
                              static_cast<Activity>(rng() % kActivityCount)));
  const auto stream = test::stream_of(std::move(events), 4);
  const auto s = temporal_split(stream, {0.7, 0.15, 0.15});
  std::vector<SensorEvent> glued = s.train.events;
  glued.insert(glued.end(), s.validation.events.begin(), s.validation.events.end());
  glued.insert(glued.end(), s.test.events.begin(), s.test.events.end());
  CHECK(glued == stream.events);
}

TEST_CASE("serialize/parse round trip preserves the stream") {
  std::mt19937 rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<SensorEvent> events;
    const int n = 1 + static_cast<int>(rng() % 40);
    for (int i = 0; i < n; ++i) {
      // short label runs, single-event runs included
      events.push_back(test::ev(0, static_cast<int>(rng() % 3),
                                static_cast<Activity>(rng() % kActivityCount),
                                rng() % 2 ? SensorState::On : SensorState::Off));
    }
    const auto stream = test::stream_of(std::move(events), 3);
    const auto reparsed = load_dataset_text(serialize_casas(stream), LabelMap::defaults());
    CHECK(reparsed.parse_errors.empty());
    REQUIRE(reparsed.stream.size() == stream.size());
    bool all_equal = true;
    for (std::size_t i = 0; i < stream.size(); ++i) {
      const auto& a = stream.events[i];
      const auto& b = reparsed.stream.events[i];
      all_equal = all_equal && a.timestamp == b.timestamp && a.state == b.state &&
                  a.label == b.label &&
                  stream.registry.name(a.sensor) == reparsed.stream.registry.name(b.sensor);
    }
    CHECK(all_equal);
  }
}

TEST_CASE("limit_to_days keeps the leading span") {
  std::vector<SensorEvent> events;
  for (int d = 0; d < 10; ++d) events.push_back(test::ev(test::at(d, 12.0), 0));
  const auto stream = test::stream_of(std::move(events), 1);
  CHECK(limit_to_days(stream, 3).size() == 3);
  CHECK(limit_to_days(stream, 0).size() == 10);
}
