#include "har/day_partition.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace har {

DaySegment segment_of(double hour, const DayPartition& p) {
  if (hour >= p.mu && hour < p.alpha) return DaySegment::Morning;
  if (hour >= p.alpha && hour < p.nu) return DaySegment::Afternoon;
  return DaySegment::Night;
}

std::vector<ActivityDescriptor> activity_descriptors(const EventStream& train,
                                                     const DescriptorOptions& opts) {
  const int onehot_dim = opts.include_other ? kActivityCount : kActivityCount - 1;
  std::vector<ActivityDescriptor> out;
  std::vector<double> counts;  // raw numeric columns, standardized below
  std::vector<double> hours;

  const auto& ev = train.events;
  if (ev.empty()) return out;
  std::size_t run_begin = 0;
  for (std::size_t i = 1; i <= ev.size(); ++i) {
    if (i < ev.size() && ev[i].label == ev[run_begin].label) continue;
    const Activity label = ev[run_begin].label;
    if (opts.include_other || label != Activity::Other) {
      ActivityDescriptor d;
      d.start_hour = hour_of_day(ev[run_begin].timestamp);
      d.features.assign(static_cast<std::size_t>(onehot_dim) + 2, 0.0);
      d.features[static_cast<std::size_t>(activity_index(label))] = 1.0;
      hours.push_back(d.start_hour);
      counts.push_back(static_cast<double>(i - run_begin));
      out.push_back(std::move(d));
    }
    run_begin = i;
  }

  auto standardized = [&](std::vector<double>& col) {
    const double n = static_cast<double>(col.size());
    double mean = 0;
    for (double v : col) mean += v;
    mean /= n;
    double var = 0;
    for (double v : col) var += (v - mean) * (v - mean);
    const double sd = std::sqrt(var / n);
    for (double& v : col) v = sd > 0 ? (v - mean) / sd : 0.0;
  };
  if (opts.standardize && !out.empty()) {
    standardized(hours);
    standardized(counts);
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i].features[static_cast<std::size_t>(onehot_dim)] = hours[i];
    out[i].features[static_cast<std::size_t>(onehot_dim) + 1] = counts[i];
  }
  return out;
}

double cohesion(const DayPartition& p,
                const std::vector<ActivityDescriptor>& descriptors) {
  if (descriptors.empty()) throw Error("cohesion requires descriptors");
  std::array<std::vector<std::size_t>, 3> groups;
  for (std::size_t i = 0; i < descriptors.size(); ++i)
    groups[static_cast<std::size_t>(segment_of(descriptors[i].start_hour, p))].push_back(i);

  const std::size_t dim = descriptors.front().features.size();
  double total = 0;
  int non_empty = 0;
  std::vector<double> centroid(dim);
  for (const auto& g : groups) {
    if (g.empty()) continue;
    ++non_empty;
    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t idx : g)
      for (std::size_t d = 0; d < dim; ++d)
        centroid[d] += descriptors[idx].features[d];
    for (double& c : centroid) c /= static_cast<double>(g.size());
    double sum_sq = 0;
    for (std::size_t idx : g) {
      for (std::size_t d = 0; d < dim; ++d) {
        const double diff = descriptors[idx].features[d] - centroid[d];
        sum_sq += diff * diff;
      }
    }
    total += sum_sq / static_cast<double>(g.size());
  }
  return total / static_cast<double>(non_empty);
}

std::vector<double> default_hour_grid() {
  std::vector<double> g(24);
  for (int h = 0; h < 24; ++h) g[static_cast<std::size_t>(h)] = h;
  return g;
}

namespace {

struct Candidate {
  double score;
  DayPartition p;

  bool better_than(const Candidate& o) const {
    if (score != o.score) return score < o.score;
    if (p.mu != o.p.mu) return p.mu < o.p.mu;
    if (p.alpha != o.p.alpha) return p.alpha < o.p.alpha;
    return p.nu < o.p.nu;
  }
};

std::vector<DayPartition> grid_triples(const std::vector<double>& grid) {
  std::vector<double> hours = grid;
  std::sort(hours.begin(), hours.end());
  hours.erase(std::unique(hours.begin(), hours.end()), hours.end());
  if (hours.size() < 3) throw Error("partition grid needs >= 3 distinct hours");
  for (double h : hours)
    if (h < 0.0 || h >= 24.0) throw Error("partition grid hours must be in [0,24)");
  std::vector<DayPartition> out;
  for (std::size_t a = 0; a < hours.size(); ++a)
    for (std::size_t b = a + 1; b < hours.size(); ++b)
      for (std::size_t c = b + 1; c < hours.size(); ++c)
        out.push_back({hours[a], hours[b], hours[c]});
  return out;
}

}  // namespace

DayPartition optimize_partition_serial(
    const std::vector<ActivityDescriptor>& descriptors,
    const std::vector<double>& grid) {
  if (descriptors.empty()) throw Error("optimize_partition requires descriptors");
  const auto triples = grid_triples(grid);
  Candidate best{cohesion(triples.front(), descriptors), triples.front()};
  for (std::size_t i = 1; i < triples.size(); ++i) {
    Candidate c{cohesion(triples[i], descriptors), triples[i]};
    if (c.better_than(best)) best = c;
  }
  return best.p;
}

DayPartition optimize_partition(const std::vector<ActivityDescriptor>& descriptors,
                                const std::vector<double>& grid, Exec exec) {
  if (exec == Exec::Serial) return optimize_partition_serial(descriptors, grid);
  if (descriptors.empty()) throw Error("optimize_partition requires descriptors");
  const auto triples = grid_triples(grid);

  Candidate best{cohesion(triples.front(), descriptors), triples.front()};
#pragma omp parallel
  {
    Candidate local = best;
#pragma omp for nowait schedule(static)
    for (std::ptrdiff_t i = 1; i < static_cast<std::ptrdiff_t>(triples.size()); ++i) {
      const auto& t = triples[static_cast<std::size_t>(i)];
      Candidate c{cohesion(t, descriptors), t};
      if (c.better_than(local)) local = c;
    }
#pragma omp critical
    if (local.better_than(best)) best = local;
  }
  return best.p;
}

}  // namespace har
