#include <doctest.h>

#include "har/metrics.hpp"

using namespace har;

namespace {
constexpr Activity A = Activity::Sleep;
constexpr Activity B = Activity::Eat;
constexpr Activity O = Activity::Other;
}  // namespace

TEST_CASE("perfect prediction") {
  const std::vector<Activity> t = {A, A, B, B};
  const auto rep = metrics(t, t);
  CHECK(rep.accuracy == 1.0);
  CHECK(rep.weighted_f1 == 1.0);
  CHECK(rep.n_samples == 4);
}

TEST_CASE("worked example: accuracy 0.75, weighted F1 11/15") {
  const std::vector<Activity> t = {A, A, B, B};
  const std::vector<Activity> p = {A, B, B, B};
  const auto rep = metrics(t, p);
  CHECK(rep.accuracy == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(rep.weighted_f1 == doctest::Approx(0.5 * (2.0 / 3.0) + 0.5 * 0.8).epsilon(1e-9));

  REQUIRE(rep.per_class.size() == 2);
  const auto& eat = rep.per_class[0];  // Eat has the smaller index
  CHECK(eat.label == B);
  CHECK(eat.precision == doctest::Approx(2.0 / 3.0));
  CHECK(eat.recall == doctest::Approx(1.0));
  CHECK(eat.f1 == doctest::Approx(0.8));
  CHECK(eat.support == 2);
  const auto& sleep = rep.per_class[1];
  CHECK(sleep.f1 == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("exclusion drops pairs by TRUE label only") {
  SUBCASE("excluded true labels vanish") {
    const std::vector<Activity> t = {A, O};
    const std::vector<Activity> p = {A, A};
    const auto rep = metrics(t, p, O);
    CHECK(rep.n_samples == 1);
    CHECK(rep.accuracy == 1.0);
  }
  SUBCASE("predictions of the excluded label still count as errors") {
    const std::vector<Activity> t = {A, B};
    const std::vector<Activity> p = {O, B};
    const auto rep = metrics(t, p, O);
    CHECK(rep.n_samples == 2);
    CHECK(rep.accuracy == 0.5);
  }
}

TEST_CASE("confusion counts and normalization") {
  const std::vector<Activity> t = {A, A, A, B};
  const std::vector<Activity> p = {A, B, B, B};
  const auto rep = metrics(t, p);
  const auto ai = static_cast<std::size_t>(activity_index(A));
  const auto bi = static_cast<std::size_t>(activity_index(B));
  CHECK(rep.confusion[ai][ai] == 1);
  CHECK(rep.confusion[ai][bi] == 2);
  CHECK(rep.confusion[bi][bi] == 1);

  std::int64_t total = 0;
  for (const auto& row : rep.confusion)
    for (const auto c : row) total += c;
  CHECK(total == rep.n_samples);

  const auto norm = rep.normalized();
  double row_sum = 0;
  for (const auto v : norm[ai]) row_sum += v;
  CHECK(row_sum == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(norm[ai][bi] == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("zero-support classes are omitted from the weighted mean") {
  // prediction invents class O; O has zero support
  const std::vector<Activity> t = {A, A};
  const std::vector<Activity> p = {A, O};
  const auto rep = metrics(t, p);
  CHECK(rep.accuracy == 0.5);
  // weighted F1 over A only: precision 1, recall 0.5 -> F1 = 2/3
  CHECK(rep.weighted_f1 == doctest::Approx(2.0 / 3.0));
  REQUIRE(rep.per_class.size() == 2);  // O listed with support 0
  CHECK(rep.per_class[1].label == O);
  CHECK(rep.per_class[1].support == 0);
  CHECK_FALSE(rep.warnings.empty());
}

TEST_CASE("error paths") {
  const std::vector<Activity> t = {A, A};
  const std::vector<Activity> p = {A};
  CHECK_THROWS_AS(metrics(t, p), Error);

  const std::vector<Activity> all_other = {O, O};
  CHECK_THROWS_AS(metrics(all_other, all_other, O), Error);
}
