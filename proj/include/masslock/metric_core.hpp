#pragma once
// Hausdorff contrast/metric over finite point lists, open eps-neighborhood
// membership, parametric-set Hausdorff via probe grids, and finite-horizon
// set-limit membership.

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "masslock/descriptors.hpp"
#include "masslock/geometry.hpp"
#include "masslock/point_set.hpp"

namespace masslock {

// Haus(A|B) = max over a in A of min over b in B of d(a,b).
double haus_contrast(const std::vector<Vec>& a, const std::vector<Vec>& b,
                     MetricKind metric = MetricKind::euclidean);

// d_H(A,B) = Haus(A|B) v Haus(B|A).
double haus_metric(const std::vector<Vec>& a, const std::vector<Vec>& b,
                   MetricKind metric = MetricKind::euclidean);

// Open neighborhood: true iff d(x, B) < eps (strict).
bool in_neighborhood(std::span<const double> x, const SetDescriptor& b,
                     double eps, MetricKind metric = MetricKind::euclidean);

// Hausdorff metric between probe-grid restrictions of two descriptors;
// exact endpoint formula when both are 1-D intervals.
double descriptor_haus(const SetDescriptor& a, const SetDescriptor& b,
                       const PointSet& probe);

// d_H([a,b],[c,e]) = max(|a-c|, |b-e|).
double interval_hausdorff(const Interval& a, const Interval& b);

// Closed-form d_H for interval/interval, ball/ball (same dim) and
// finite/finite pairs; throws ArgumentError for other combinations.
double descriptor_hausdorff_exact(const SetDescriptor& a, const SetDescriptor& b,
                                  MetricKind metric = MetricKind::euclidean);

// Finite-horizon approximation of x in lim_n B_n: true iff
// d(x, B_n) < eps for every n in [tail_start, tail_end].
bool limit_membership(std::span<const double> x,
                      const std::function<SetDescriptor(std::int64_t)>& sequence,
                      double eps, std::int64_t tail_start, std::int64_t tail_end,
                      MetricKind metric = MetricKind::euclidean);

}  // namespace masslock
