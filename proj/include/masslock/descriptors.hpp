#pragma once
// Parametric closed sets: the candidate shapes the solver minimizes over.
// Membership is closed (<= on radii and endpoints); SeparatedUnion carries
// its separation requirement.

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include <json.hpp>

#include "masslock/geometry.hpp"
#include "masslock/point_set.hpp"

namespace masslock {

struct Interval {
  double lo = 0.0, hi = 0.0;  // 1-D closed interval, lo <= hi
};

struct Ball {
  Vec center;
  double radius = 0.0;  // >= 0
};

struct Box {
  Vec lo, hi;  // lo <= hi coordinatewise
};

struct SeparatedUnion {
  std::vector<Ball> parts;
  double separation = 0.0;  // required pairwise gap, > 0
};

struct FiniteSubset {
  std::vector<std::size_t> indices;  // into the originating sample
  std::vector<Vec> points;           // resolved coordinates
};

using SetDescriptor =
    std::variant<Interval, Ball, Box, SeparatedUnion, FiniteSubset>;

void validate(const SetDescriptor& d);
std::size_t descriptor_dim(const SetDescriptor& d);

// Closed membership.
bool contains(const SetDescriptor& d, std::span<const double> x,
              MetricKind metric = MetricKind::euclidean);

// d(x, B): 0 inside, inf over the set otherwise (exact per variant).
double distance_to(const SetDescriptor& d, std::span<const double> x,
                   MetricKind metric = MetricKind::euclidean);

// All pairwise component gaps (center distance minus radius sum) >= separation.
bool separation_ok(const SeparatedUnion& u,
                   MetricKind metric = MetricKind::euclidean);

// Bounding box [lo, hi] per coordinate (every variant is bounded).
void bounding_box(const SetDescriptor& d, Vec& lo, Vec& hi);

// Total order matching "sorted lexicographically by encoded parameters".
bool descriptor_less(const SetDescriptor& a, const SetDescriptor& b);
bool descriptor_equal(const SetDescriptor& a, const SetDescriptor& b);

nlohmann::json descriptor_to_json(const SetDescriptor& d);
SetDescriptor descriptor_from_json(const nlohmann::json& j);

FiniteSubset make_finite_subset(const PointSet& space,
                                std::vector<std::size_t> indices);

}  // namespace masslock
