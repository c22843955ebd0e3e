#include <doctest.h>

#include <random>

#include "har/mutual_info.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

using namespace har;

TEST_CASE("mi_global counts consecutive pairs") {
  // [A,B,A,A]: pairs (A,B),(B,A),(A,A), each worth 1/4
  const auto stream = test::stream_of_sensors({0, 1, 0, 0}, 2);
  const auto mi = mi_global(stream.events, 2);
  CHECK(mi.at(0, 1) == doctest::Approx(0.25));
  CHECK(mi.at(1, 0) == doctest::Approx(0.25));
  CHECK(mi.at(0, 0) == doctest::Approx(0.25));
  CHECK(mi.at(1, 1) == 0.0);

  const auto ref = oracle::pair_count_mi({0, 1, 0, 0}, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      CHECK(mi.at(i, j) == doctest::Approx(ref[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]));
}

TEST_CASE("mi_global single event and repeated sensor") {
  const auto one = test::stream_of_sensors({0}, 2);
  CHECK(mi_global(one.events, 2).sum() == 0.0);

  const auto rep = test::stream_of_sensors({0, 0, 0, 0}, 1);
  const auto mi = mi_global(rep.events, 1);
  CHECK(mi.at(0, 0) == doctest::Approx(0.75));
}

TEST_CASE("mi_global rejects out-of-range sensors") {
  const auto stream = test::stream_of_sensors({0, 2}, 2);
  CHECK_THROWS_AS(mi_global(stream.events, 2), Error);
}

TEST_CASE("mi_global mass invariant on random streams") {
  std::mt19937 rng(41);
  for (int trial = 0; trial < 200; ++trial) {
    const int m = 1 + static_cast<int>(rng() % 10);
    const int n = 1 + static_cast<int>(rng() % 200);
    std::vector<int> sensors;
    for (int i = 0; i < n; ++i) sensors.push_back(static_cast<int>(rng() % m));
    const auto stream = test::stream_of_sensors(sensors, m);
    const auto mi = mi_global(stream.events, m);
    const double expected = static_cast<double>(n - 1) / static_cast<double>(n);
    CHECK(std::abs(mi.sum() - expected) <= 1e-12);
  }
}

TEST_CASE("mi_temporal: single-segment stream reproduces mi_global") {
  std::vector<SensorEvent> events;
  std::mt19937 rng(43);
  for (int i = 0; i < 50; ++i)
    events.push_back(test::ev(test::at(0, 8.0 + i * 0.001), static_cast<int>(rng() % 3)));
  const auto stream = test::stream_of(std::move(events), 3);
  const auto tmi = mi_temporal(stream.events, 3, {6, 12, 20});
  const auto global = mi_global(stream.events, 3);
  CHECK(tmi.morning.values == global.values);
  CHECK(tmi.afternoon.sum() == 0.0);
  CHECK(tmi.night.sum() == 0.0);
}

TEST_CASE("mi_temporal counts pairs within the segment subsequence") {
  // alternating hour-8 / hour-15 events; morning subsequence = sensors 0,1,0
  std::vector<SensorEvent> events;
  events.push_back(test::ev(test::at(0, 8.00), 0));
  events.push_back(test::ev(test::at(0, 15.00), 2));
  events.push_back(test::ev(test::at(0, 8.01) + kMicrosPerDay, 1));
  events.push_back(test::ev(test::at(0, 15.01) + kMicrosPerDay, 2));
  events.push_back(test::ev(test::at(0, 8.02) + 2 * kMicrosPerDay, 0));
  const auto stream = test::stream_of(std::move(events), 3);
  const auto tmi = mi_temporal(stream.events, 3, {6, 12, 20});
  // morning: [0,1,0] -> pairs (0,1),(1,0) over n_seg=3
  CHECK(tmi.morning.at(0, 1) == doctest::Approx(1.0 / 3));
  CHECK(tmi.morning.at(1, 0) == doctest::Approx(1.0 / 3));
  // afternoon: [2,2] -> one pair over n_seg=2
  CHECK(tmi.afternoon.at(2, 2) == doctest::Approx(0.5));
  CHECK(tmi.night.sum() == 0.0);
}

TEST_CASE("mi_temporal adjacent_only counts only stream-adjacent pairs") {
  std::vector<SensorEvent> events;
  events.push_back(test::ev(test::at(0, 8.00), 0));
  events.push_back(test::ev(test::at(0, 15.00), 2));
  events.push_back(test::ev(test::at(0, 8.01) + kMicrosPerDay, 1));
  const auto stream = test::stream_of(std::move(events), 3);
  TemporalMIOptions opts;
  opts.adjacent_only = true;
  const auto tmi = mi_temporal(stream.events, 3, {6, 12, 20}, opts);
  CHECK(tmi.morning.sum() == 0.0);  // the two morning events are not adjacent
}

TEST_CASE("mi_cooccurrence window membership") {
  const auto stream = test::stream_of_sensors({0, 1, 0, 1}, 2);
  const auto windows = event_windows(stream, 2);
  // windows: [0], [0,1], [1,0], [0,1]
  const auto mi = mi_cooccurrence(windows, 2);
  CHECK(mi.at(0, 0) == doctest::Approx(1.0));    // sensor 0 present in all 4
  CHECK(mi.at(0, 1) == doctest::Approx(0.75));   // both present in 3 of 4
  CHECK(mi.at(1, 0) == doctest::Approx(0.75));
  CHECK(mi.at(1, 1) == doctest::Approx(0.75));
}

TEST_CASE("mi_cooccurrence examples") {
  SUBCASE("both windows contain A and B -> all ones") {
    const auto stream = test::stream_of_sensors({0, 1, 0, 1}, 2);
    const auto all = event_windows(stream, 2);
    const std::vector<LabeledWindow> windows = {all[1], all[3]};
    const auto mi = mi_cooccurrence(windows, 2);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) CHECK(mi.at(i, j) == doctest::Approx(1.0));
  }
  SUBCASE("sensors never sharing a window -> zero entry") {
    const auto stream = test::stream_of_sensors({0, 0, 1, 1}, 2);
    const auto all = event_windows(stream, 2);
    const std::vector<LabeledWindow> windows = {all[1], all[3]};
    const auto mi = mi_cooccurrence(windows, 2);
    CHECK(mi.at(0, 1) == 0.0);
    CHECK(mi.at(1, 0) == 0.0);
  }
  SUBCASE("single window with one sensor") {
    const auto stream = test::stream_of_sensors({0}, 2);
    const auto windows = event_windows(stream, 1);
    const auto mi = mi_cooccurrence(windows, 2);
    CHECK(mi.at(0, 0) == doctest::Approx(1.0));
    CHECK(mi.sum() == doctest::Approx(1.0));
  }
  SUBCASE("empty windows error") {
    CHECK_THROWS_AS(mi_cooccurrence({}, 2), Error);
  }
}

TEST_CASE("mi_cooccurrence is symmetric with entries in [0,1]") {
  std::mt19937 rng(47);
  std::vector<int> sensors;
  for (int i = 0; i < 150; ++i) sensors.push_back(static_cast<int>(rng() % 5));
  const auto stream = test::stream_of_sensors(sensors, 5);
  const auto windows = event_windows(stream, 7);
  const auto mi = mi_cooccurrence(windows, 5);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) {
      CHECK(mi.at(i, j) == mi.at(j, i));
      CHECK(mi.at(i, j) >= 0.0);
      CHECK(mi.at(i, j) <= 1.0);
    }
}

TEST_CASE("mi_activity counts pairs only inside non-Other runs") {
  // runs: Cook=[A,B], Other=[C,C], Eat=[B,B]
  std::vector<SensorEvent> events = {
      test::ev(0, 0, Activity::Cook), test::ev(0, 1, Activity::Cook),
      test::ev(0, 2, Activity::Other), test::ev(0, 2, Activity::Other),
      test::ev(0, 1, Activity::Eat),  test::ev(0, 1, Activity::Eat)};
  const auto stream = test::stream_of(std::move(events), 3);
  const auto mi = mi_activity(stream, 3);
  CHECK(mi.at(0, 1) == doctest::Approx(0.25));  // (A,B) over 4 non-Other events
  CHECK(mi.at(1, 1) == doctest::Approx(0.25));  // (B,B) from Eat
  CHECK(mi.at(1, 2) == 0.0);
  CHECK(mi.at(2, 2) == 0.0);
  CHECK(mi.at(2, 1) == 0.0);
  CHECK(mi.source_event_count == 4);
}

TEST_CASE("mi_activity all-Other stream is the zero matrix") {
  const auto stream = test::stream_of_sensors({0, 1, 0}, 2);
  CHECK(mi_activity(stream, 2).sum() == 0.0);
}

TEST_CASE("mi_activity single labeled run") {
  std::vector<SensorEvent> events = {test::ev(0, 0, Activity::Sleep),
                                     test::ev(0, 0, Activity::Sleep),
                                     test::ev(0, 0, Activity::Sleep)};
  const auto stream = test::stream_of(std::move(events), 1);
  CHECK(mi_activity(stream, 1).at(0, 0) == doctest::Approx(2.0 / 3));
}

TEST_CASE("MI JSON round trip is value-exact") {
  std::mt19937 rng(53);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  MIMatrix mi = MIMatrix::zeros(4);
  mi.source_event_count = 1234;
  for (auto& v : mi.values) v = uniform(rng) / 3.0;  // non-terminating decimals
  const std::vector<std::string> labels = {"M001", "M002", "M003", "M004"};

  std::vector<std::string> parsed_labels;
  const MIMatrix back = mi_from_json(mi_to_json(mi, labels), &parsed_labels);
  CHECK(back.m == mi.m);
  CHECK(back.source_event_count == mi.source_event_count);
  CHECK(parsed_labels == labels);
  for (std::size_t i = 0; i < mi.values.size(); ++i)
    CHECK(back.values[i] == mi.values[i]);  // bitwise
}

TEST_CASE("mi_from_json rejects malformed input") {
  CHECK_THROWS_AS(mi_from_json("not json"), Error);
  CHECK_THROWS_AS(mi_from_json("{}"), Error);
  CHECK_THROWS_AS(mi_from_json(R"({"m":2,"rows":[[0,0]]})"), Error);
}
