#include "masslock/metric_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "masslock/errors.hpp"

namespace masslock {

double haus_contrast(const std::vector<Vec>& a, const std::vector<Vec>& b,
                     MetricKind metric) {
  if (a.empty() || b.empty())
    throw ArgumentError("haus_contrast requires non-empty point lists");
  double worst = 0.0;
  for (const auto& p : a) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& q : b) best = std::min(best, point_distance(p, q, metric));
    worst = std::max(worst, best);
  }
  return worst;
}

double haus_metric(const std::vector<Vec>& a, const std::vector<Vec>& b,
                   MetricKind metric) {
  return std::max(haus_contrast(a, b, metric), haus_contrast(b, a, metric));
}

bool in_neighborhood(std::span<const double> x, const SetDescriptor& b,
                     double eps, MetricKind metric) {
  if (!(eps > 0.0)) throw ArgumentError("eps must be > 0");
  return distance_to(b, x, metric) < eps;
}

double interval_hausdorff(const Interval& a, const Interval& b) {
  return std::max(std::abs(a.lo - b.lo), std::abs(a.hi - b.hi));
}

double descriptor_haus(const SetDescriptor& a, const SetDescriptor& b,
                       const PointSet& probe) {
  if (std::holds_alternative<Interval>(a) && std::holds_alternative<Interval>(b))
    return interval_hausdorff(std::get<Interval>(a), std::get<Interval>(b));
  if (!probe.has_coords())
    throw ArgumentError("descriptor_haus requires a coordinate probe");
  std::vector<Vec> in_a, in_b;
  for (std::size_t i = 0; i < probe.size(); ++i) {
    const auto& p = probe.point(i);
    if (contains(a, p, probe.metric())) in_a.push_back(p);
    if (contains(b, p, probe.metric())) in_b.push_back(p);
  }
  if (in_a.empty() || in_b.empty())
    throw DegenerateProbeError("probe grid misses a descriptor");
  return haus_metric(in_a, in_b, probe.metric());
}

double descriptor_hausdorff_exact(const SetDescriptor& a, const SetDescriptor& b,
                                  MetricKind metric) {
  if (std::holds_alternative<Interval>(a) && std::holds_alternative<Interval>(b))
    return interval_hausdorff(std::get<Interval>(a), std::get<Interval>(b));
  if (std::holds_alternative<Ball>(a) && std::holds_alternative<Ball>(b)) {
    const auto& u = std::get<Ball>(a);
    const auto& v = std::get<Ball>(b);
    // d_H(B(c1,r1), B(c2,r2)) = d(c1,c2) + |r1-r2| for norm balls.
    return point_distance(u.center, v.center, metric) +
           std::abs(u.radius - v.radius);
  }
  // A 1-D ball is the interval [c-r, c+r].
  auto as_interval = [](const SetDescriptor& d) -> Interval {
    if (std::holds_alternative<Interval>(d)) return std::get<Interval>(d);
    const auto& b = std::get<Ball>(d);
    return Interval{b.center[0] - b.radius, b.center[0] + b.radius};
  };
  const bool a_1d = std::holds_alternative<Interval>(a) ||
                    (std::holds_alternative<Ball>(a) && descriptor_dim(a) == 1);
  const bool b_1d = std::holds_alternative<Interval>(b) ||
                    (std::holds_alternative<Ball>(b) && descriptor_dim(b) == 1);
  if (a_1d && b_1d) return interval_hausdorff(as_interval(a), as_interval(b));
  if (std::holds_alternative<FiniteSubset>(a) &&
      std::holds_alternative<FiniteSubset>(b))
    return haus_metric(std::get<FiniteSubset>(a).points,
                       std::get<FiniteSubset>(b).points, metric);
  throw ArgumentError("no closed-form Hausdorff for this descriptor pair");
}

bool limit_membership(std::span<const double> x,
                      const std::function<SetDescriptor(std::int64_t)>& sequence,
                      double eps, std::int64_t tail_start, std::int64_t tail_end,
                      MetricKind metric) {
  if (!(eps > 0.0)) throw ArgumentError("eps must be > 0");
  if (!(tail_start < tail_end))
    throw ArgumentError("limit_membership requires tail_start < tail_end");
  for (std::int64_t n = tail_start; n <= tail_end; ++n)
    if (!(distance_to(sequence(n), x, metric) < eps)) return false;
  return true;
}

}  // namespace masslock
