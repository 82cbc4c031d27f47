#pragma once
// Packing numbers M(B,t), ball-covering numbers N(B,t), and exact step
// profiles t -> M(B,t) for finite point sets.
//
// M(B,t): max cardinality of a subset with pairwise distances strictly > t
// (a pair at distance exactly t conflicts). Exact mode solves the maximum
// independent set of the conflict graph by branch-and-bound; 1-D coordinate
// sets use the exact sorted greedy instead and are not capped.
//
// N(B,t): minimum number of closed balls of radius t covering B, centers
// unrestricted for coordinate geometries (1-center feasibility by minimum
// enclosing ball), centers restricted to the space's points for explicit
// distance matrices.

#include <cstddef>
#include <span>
#include <vector>

#include <json.hpp>

#include "masslock/point_set.hpp"

namespace masslock {

enum class PackingMode { exact, lower_bound };
enum class CoveringMode { exact, upper_bound };

struct PackingCaps {
  std::size_t exact_packing = 64;
  std::size_t exact_covering = 24;
};

// Right-continuous step function t -> M(B,t):
//   value n on (0, breakpoints[0]), values[k] on [breakpoints[k],
//   breakpoints[k+1]), final value 1 on [max distance, inf).
struct PackingProfile {
  std::vector<double> breakpoints;   // strictly increasing distinct distances
  std::vector<std::size_t> values;   // one per breakpoint piece, non-increasing
  std::size_t n = 0;

  std::size_t value_at(double t) const;  // t > 0
  nlohmann::json to_json() const;
  static PackingProfile from_json(const nlohmann::json& j);
};

std::size_t packing_number(const PointSet& space,
                           std::span<const std::size_t> subset, double t,
                           PackingMode mode, const PackingCaps& caps = {});
std::size_t packing_number(const PointSet& space, double t,
                           PackingMode mode = PackingMode::exact,
                           const PackingCaps& caps = {});

std::size_t covering_number(const PointSet& space,
                            std::span<const std::size_t> subset, double t,
                            CoveringMode mode, const PackingCaps& caps = {});
std::size_t covering_number(const PointSet& space, double t,
                            CoveringMode mode = CoveringMode::exact,
                            const PackingCaps& caps = {});

PackingProfile packing_profile(const PointSet& space,
                               std::span<const std::size_t> subset,
                               const PackingCaps& caps = {});
PackingProfile packing_profile(const PointSet& space,
                               const PackingCaps& caps = {});

// Kolmogorov sandwich M(B,2t) <= N(B,t) <= M(B,t) with exact modes.
bool comparison_check(const PointSet& space, std::span<const std::size_t> subset,
                      double t, const PackingCaps& caps = {});
bool comparison_check(const PointSet& space, double t,
                      const PackingCaps& caps = {});

// Minimum enclosing ball radius of coordinate points (Welzl for euclidean).
double min_enclosing_radius(std::span<const Vec> pts, MetricKind metric);

}  // namespace masslock
