#include "har/metrics.hpp"

namespace har {

ConfusionNormalized EvalReport::normalized() const {
  ConfusionNormalized out{};
  for (int r = 0; r < kActivityCount; ++r) {
    std::int64_t row_sum = 0;
    for (int c = 0; c < kActivityCount; ++c)
      row_sum += confusion[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
    if (row_sum == 0) continue;
    for (int c = 0; c < kActivityCount; ++c)
      out[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] =
          static_cast<double>(confusion[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]) /
          static_cast<double>(row_sum);
  }
  return out;
}

EvalReport metrics(std::span<const Activity> truth,
                   std::span<const Activity> predicted,
                   std::optional<Activity> exclude) {
  if (truth.size() != predicted.size())
    throw Error("metrics: label vectors differ in length (" +
                std::to_string(truth.size()) + " vs " +
                std::to_string(predicted.size()) + ")");

  EvalReport rep;
  rep.excluded = exclude;
  std::int64_t correct = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (exclude && truth[i] == *exclude) continue;
    ++rep.n_samples;
    if (truth[i] == predicted[i]) ++correct;
    rep.confusion[static_cast<std::size_t>(activity_index(truth[i]))]
                 [static_cast<std::size_t>(activity_index(predicted[i]))] += 1;
  }
  if (rep.n_samples == 0)
    throw Error("metrics: no pairs remain after exclusion filtering");
  rep.accuracy = static_cast<double>(correct) / static_cast<double>(rep.n_samples);

  double weighted_sum = 0;
  std::int64_t support_sum = 0;
  for (int c = 0; c < kActivityCount; ++c) {
    const auto cs = static_cast<std::size_t>(c);
    std::int64_t tp = rep.confusion[cs][cs];
    std::int64_t support = 0, predicted_count = 0;
    for (int o = 0; o < kActivityCount; ++o) {
      support += rep.confusion[cs][static_cast<std::size_t>(o)];
      predicted_count += rep.confusion[static_cast<std::size_t>(o)][cs];
    }
    if (support == 0 && predicted_count == 0) continue;

    ClassMetrics cm;
    cm.label = static_cast<Activity>(c);
    cm.support = support;
    if (predicted_count == 0) {
      rep.warnings.push_back("precision undefined for class " +
                             std::string(activity_name(cm.label)) + "; set to 0");
    }
    cm.precision = predicted_count > 0
                       ? static_cast<double>(tp) / static_cast<double>(predicted_count)
                       : 0.0;
    if (support == 0) {
      rep.warnings.push_back("recall undefined for class " +
                             std::string(activity_name(cm.label)) + "; set to 0");
    }
    cm.recall = support > 0 ? static_cast<double>(tp) / static_cast<double>(support) : 0.0;
    cm.f1 = cm.precision + cm.recall > 0
                ? 2.0 * cm.precision * cm.recall / (cm.precision + cm.recall)
                : 0.0;
    rep.per_class.push_back(cm);

    if (support > 0) {
      weighted_sum += static_cast<double>(support) * cm.f1;
      support_sum += support;
    }
  }
  rep.weighted_f1 = support_sum > 0 ? weighted_sum / static_cast<double>(support_sum) : 0.0;
  return rep;
}

}  // namespace har
