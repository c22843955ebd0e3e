#include "har/knn.hpp"

#include <algorithm>
#include <array>
#include <limits>

namespace har {

KnnModel KnnModel::fit(FeatureMatrix train, std::vector<Activity> labels, int k) {
  if (labels.empty()) throw Error("KNN fit requires a non-empty training set");
  if (train.rows != labels.size())
    throw Error("KNN fit: feature/label count mismatch (" +
                std::to_string(train.rows) + " vs " + std::to_string(labels.size()) + ")");
  if (k < 1) throw Error("KNN fit: k must be >= 1");
  if (static_cast<std::size_t>(k) > labels.size())
    throw Error("KNN fit: k=" + std::to_string(k) + " exceeds sample count " +
                std::to_string(labels.size()));
  KnnModel m;
  m.train_ = std::move(train);
  m.labels_ = std::move(labels);
  m.k_ = k;
  return m;
}

Activity KnnModel::predict(std::span<const double> query) const {
  if (query.size() != train_.dim)
    throw Error("KNN predict: query dimension " + std::to_string(query.size()) +
                " does not match model dimension " + std::to_string(train_.dim));

  const std::size_t n = labels_.size();
  std::vector<std::pair<double, std::size_t>> dist;
  dist.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double* row = train_.data.data() + i * train_.dim;
    double sq = 0;
    for (std::size_t d = 0; d < train_.dim; ++d) {
      const double diff = row[d] - query[d];
      sq += diff * diff;
    }
    dist.emplace_back(sq, i);
  }
  const auto kth = dist.begin() + k_;
  std::partial_sort(dist.begin(), kth, dist.end());

  std::array<int, kActivityCount> votes{};
  std::array<double, kActivityCount> nearest;
  nearest.fill(std::numeric_limits<double>::infinity());
  for (int i = 0; i < k_; ++i) {
    const int label = activity_index(labels_[dist[static_cast<std::size_t>(i)].second]);
    votes[static_cast<std::size_t>(label)] += 1;
    nearest[static_cast<std::size_t>(label)] =
        std::min(nearest[static_cast<std::size_t>(label)],
                 dist[static_cast<std::size_t>(i)].first);
  }

  int best = -1;
  for (int c = 0; c < kActivityCount; ++c) {
    if (votes[static_cast<std::size_t>(c)] == 0) continue;
    if (best < 0) {
      best = c;
      continue;
    }
    const auto cs = static_cast<std::size_t>(c);
    const auto bs = static_cast<std::size_t>(best);
    if (votes[cs] > votes[bs] ||
        (votes[cs] == votes[bs] && nearest[cs] < nearest[bs]))
      best = c;
    // equal votes and equal nearest distance: smaller index already held
  }
  return static_cast<Activity>(best);
}

std::vector<Activity> KnnModel::predict_batch_serial(const FeatureMatrix& queries) const {
  std::vector<Activity> out(queries.rows, Activity::Other);
  for (std::size_t r = 0; r < queries.rows; ++r) out[r] = predict(queries.row(r));
  return out;
}

std::vector<Activity> KnnModel::predict_batch(const FeatureMatrix& queries,
                                              Exec exec) const {
  if (exec == Exec::Serial) return predict_batch_serial(queries);
  if (queries.rows > 0 && queries.dim != train_.dim)
    throw Error("KNN predict: query dimension mismatch");
  std::vector<Activity> out(queries.rows, Activity::Other);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t r = 0; r < static_cast<std::ptrdiff_t>(queries.rows); ++r)
    out[static_cast<std::size_t>(r)] = predict(queries.row(static_cast<std::size_t>(r)));
  return out;
}

}  // namespace har
