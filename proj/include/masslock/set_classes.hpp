#pragma once
// Candidate classes F: family specs, empirical mass of descriptors, and the
// deterministic duplicate-free candidate stream the solver scans.
//
// Candidate policy: interval endpoints / box corners at sample order
// statistics; ball centers at sample points (plus an optional extra grid)
// with radii at exact center-to-sample distances; separated unions are
// j-tuples (1 <= j <= k) of ball candidates passing the separation check;
// finite subsets enumerate every non-empty index subset in lexicographic
// prefix order.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "masslock/descriptors.hpp"
#include "masslock/errors.hpp"
#include "masslock/measures.hpp"

namespace masslock {

// Raised when the candidate stream hits its enumeration budget; a subtype so
// the solver can tell budget truncation apart from exact-mode caps.
struct BudgetExceeded : CapacityError {
  using CapacityError::CapacityError;
};

enum class Family { intervals, balls, boxes, separated_union, finite_subsets };

Family family_from_string(const std::string& s);
std::string to_string(Family f);

struct ClassSpec {
  Family family = Family::intervals;
  int union_k = 2;             // max components, <= 3
  double union_eps = 1.0;      // required pairwise gap
  std::vector<Vec> extra_centers;
  std::uint64_t candidate_budget = 10'000'000;

  nlohmann::json to_json() const;
  static ClassSpec from_json(const nlohmann::json& j);
};

// Weight of the sample points contained in the descriptor. Uniform measures
// count points and divide once, so feasibility comparisons against 1-alpha
// are exact for rational masses.
double descriptor_mass(const SetDescriptor& d, const EmpiricalMeasure& mu);

// Calls visit for every candidate in deterministic order until the stream
// ends or visit returns false; throws CapacityError past the budget.
// Returns the number of candidates emitted.
std::uint64_t for_each_candidate(
    const ClassSpec& spec, const EmpiricalMeasure& mu, double alpha,
    const std::function<bool(const SetDescriptor&)>& visit);

std::vector<SetDescriptor> enumerate_candidates(const ClassSpec& spec,
                                                const EmpiricalMeasure& mu,
                                                double alpha);

}  // namespace masslock
