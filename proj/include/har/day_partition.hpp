#pragma once

#include <vector>

#include "har/events.hpp"
#include "har/parallel.hpp"

namespace har {

enum class DaySegment { Morning, Afternoon, Night };

/// Hour thresholds splitting the day: morning [mu,alpha), afternoon
/// [alpha,nu), night [nu,24) U [0,mu). Requires 0 <= mu < alpha < nu < 24.
struct DayPartition {
  double mu = 6.0;
  double alpha = 12.0;
  double nu = 20.0;

  bool valid() const { return 0.0 <= mu && mu < alpha && alpha < nu && nu < 24.0; }
  bool operator==(const DayPartition&) const = default;
};

DaySegment segment_of(double hour, const DayPartition& p);

/// One descriptor per maximal contiguous same-label run: the class one-hot
/// plus (optionally standardized) start hour and event count. start_hour is
/// kept raw for segment grouping.
struct ActivityDescriptor {
  double start_hour = 0.0;
  std::vector<double> features;
};

struct DescriptorOptions {
  bool include_other = false;
  bool standardize = true;
};

std::vector<ActivityDescriptor> activity_descriptors(
    const EventStream& train, const DescriptorOptions& opts = {});

/// Mean over non-empty segment groups of the within-group average squared
/// distance to the group centroid.
double cohesion(const DayPartition& p,
                const std::vector<ActivityDescriptor>& descriptors);

std::vector<double> default_hour_grid();  // integer hours 0..23

/// Exhaustive search over all ordered grid triples mu < alpha < nu for the
/// minimum cohesion; ties break to the lexicographically smallest triple.
DayPartition optimize_partition(const std::vector<ActivityDescriptor>& descriptors,
                                const std::vector<double>& grid,
                                Exec exec = Exec::Parallel);

DayPartition optimize_partition_serial(
    const std::vector<ActivityDescriptor>& descriptors,
    const std::vector<double>& grid);

}  // namespace har
