#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "har/events.hpp"

namespace har {

struct ClassMetrics {
  Activity label = Activity::Other;
  double precision = 0;
  double recall = 0;
  double f1 = 0;
  std::int64_t support = 0;
};

using ConfusionCounts =
    std::array<std::array<std::int64_t, kActivityCount>, kActivityCount>;
using ConfusionNormalized =
    std::array<std::array<double, kActivityCount>, kActivityCount>;

struct EvalReport {
  double accuracy = 0;
  double weighted_f1 = 0;
  std::vector<ClassMetrics> per_class;   // classes seen in truth or prediction
  ConfusionCounts confusion{};           // row = true, col = predicted
  std::optional<Activity> excluded;
  std::int64_t n_samples = 0;
  std::vector<std::string> warnings;

  ConfusionNormalized normalized() const;  // rows with support sum to 1
};

/// When exclude is set, pairs whose TRUE label equals it are dropped first;
/// predicting the excluded label on remaining pairs counts as an error.
/// Weighted F1 averages per-class F1 by support; zero-support classes are
/// omitted and zero-division F1 is 0.
EvalReport metrics(std::span<const Activity> truth,
                   std::span<const Activity> predicted,
                   std::optional<Activity> exclude = std::nullopt);

}  // namespace har
