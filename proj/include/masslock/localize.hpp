#pragma once
// The core solver: minimize tau over a candidate class subject to
// mass >= 1 - alpha, plus the brute-force subset oracle and the
// tau^alpha curve.

#include <cstdint>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "masslock/measures.hpp"
#include "masslock/set_classes.hpp"
#include "masslock/size_fn.hpp"

namespace masslock {

struct LocalizationProblem {
  std::variant<EmpiricalMeasure, Analytic1DMeasure> measure;
  ClassSpec cls;
  double alpha = 0.25;
  SizeFunctional functional;
  SizeBackend backend;  // defaulted per class by default_backend()
  PackingCaps caps;
};

// Backend a class solves under unless overridden: interval-exact for
// intervals and 1-D balls, finite profiles otherwise.
SizeBackend default_backend(Family family, std::size_t dim);

struct LocalizationResult {
  SetDescriptor minimizer;
  double tau_value = 0.0;
  double achieved_mass = 0.0;
  std::vector<SetDescriptor> near_minimizers;  // feasible, tau <= min + slack
  std::uint64_t candidate_count = 0;
  double slack = 0.0;
  bool minimizer_unique = true;  // analytic route only; candidates scans: true

  nlohmann::json to_json() const;
};

// Exhaustive deterministic scan; first minimum wins ties. Throws
// InfeasibleError (with the max achievable mass) when nothing is feasible,
// CapacityError when the budget truncates the stream after a feasible
// candidate was already seen.
LocalizationResult solve(const LocalizationProblem& p, double slack = 1e-9);

// Independent brute force over all non-empty subsets (n <= 20), exact
// packing profiles throughout.
LocalizationResult oracle_min(const PointSet& space,
                              const std::vector<double>& weights, double alpha,
                              const SizeFunctional& f,
                              const PackingCaps& caps = {});

// One solve per alpha (ascending), reusing the candidate stream; the
// returned taus are non-increasing.
std::vector<std::pair<double, double>> tau_alpha_curve(
    const LocalizationProblem& p, const std::vector<double>& alphas);

namespace detail {
// Generic exhaustive scan, bypassing the interval fast path (test hook).
LocalizationResult solve_empirical_generic(const LocalizationProblem& p,
                                           double slack);
}  // namespace detail

}  // namespace masslock
