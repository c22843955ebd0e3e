#pragma once

#include <span>
#include <vector>

#include "har/events.hpp"
#include "har/features.hpp"
#include "har/parallel.hpp"

namespace har {

/// Deterministic brute-force K-nearest-neighbour classifier (Euclidean).
///
/// Tie-breaks are fully pinned: equal distances at the k-th position go to
/// the earlier training point; vote ties go to the label whose nearest
/// representative among the k is closest, then to the smaller label index.
class KnnModel {
 public:
  static KnnModel fit(FeatureMatrix train, std::vector<Activity> labels, int k);

  Activity predict(std::span<const double> query) const;

  std::vector<Activity> predict_batch(const FeatureMatrix& queries,
                                      Exec exec = Exec::Parallel) const;
  std::vector<Activity> predict_batch_serial(const FeatureMatrix& queries) const;

  int k() const { return k_; }
  std::size_t size() const { return labels_.size(); }
  std::size_t dim() const { return train_.dim; }

 private:
  FeatureMatrix train_;
  std::vector<Activity> labels_;
  int k_ = 1;
};

}  // namespace har
