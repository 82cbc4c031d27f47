#pragma once
// Desk-scale reproductions of the asymptotic statements: consistency sweeps,
// the sandwich inequality, alpha-continuity, and the one-sided-convergence
// counterexample. Replicates run on derived seeds and may be evaluated
// concurrently (MASSLOCK_THREADS); records are slot-addressed so results do
// not depend on the thread count.

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "masslock/localize.hpp"

namespace masslock {

struct SweepConfig {
  Generator generator;
  ClassSpec cls;
  SizeFunctional functional;
  double alpha = 0.25;
  std::vector<std::size_t> n_list;      // strictly increasing
  std::size_t replications = 1;
  std::uint64_t seed = 0;               // replicate seeds: rng_split(seed, r)
  double slack = 1e-9;
  std::size_t reference_multiplier = 10;  // reference run when no analytic law

  nlohmann::json to_json() const;
  static SweepConfig from_json(const nlohmann::json& j);
};

struct SweepRecord {
  std::size_t n = 0;
  std::size_t replicate = 0;
  double haus_to_population = 0.0;
  double tau_n_alpha = 0.0;
  double tau_alpha_ref = 0.0;
  double runtime_ms = 0.0;
};

struct SweepReport {
  SweepConfig config;
  std::vector<SweepRecord> records;      // ordered by (n, replicate)
  std::vector<double> median_haus;       // one per n
  bool medians_strictly_decreasing = false;
  bool reference_approximate = false;    // population from a high-n run
  std::string population_note;

  void write_csv(const std::string& path) const;
  nlohmann::json summary_json() const;
};

SweepReport consistency_sweep(const SweepConfig& cfg);

struct SandwichReport {
  SweepConfig config;
  double eps = 0.0;
  double tol = 0.0;
  std::size_t n = 0;  // largest n of the list
  double tau_alpha = 0.0;            // population tau^alpha
  double tau_alpha_minus_eps = 0.0;  // population tau^{alpha-eps}
  double tau_alpha_plus_eps = 0.0;   // diagnostic lower envelope
  std::vector<double> tau_n;         // per replicate
  std::size_t violations = 0;        // stated band
  std::size_t violations_wide = 0;   // diagnostic band [tau^{a+eps}, tau^{a-eps}]
  double violation_fraction = 0.0;
  double violation_fraction_wide = 0.0;
  bool small_n_skipped = false;

  nlohmann::json to_json() const;
};

// Stated band per replicate: tau^alpha - tol <= tau(B_n) <= tau^{alpha-eps} + tol.
SandwichReport sandwich_check(const SweepConfig& cfg, double eps,
                              double tol = 1e-6);

struct AlphaContinuityReport {
  std::vector<double> alphas;
  double delta = 0.0;
  std::vector<double> tau;        // tau^alpha
  std::vector<double> tau_delta;  // tau^{alpha+delta}
  double max_tau_gap = 0.0;
  // Haus(S^{alpha+delta} | S^alpha) over near-minimizer sets.
  double max_haus_slack0 = 0.0;
  double max_haus_slack1e9 = 0.0;
  bool analytic = false;
  std::string note;

  nlohmann::json to_json() const;
};

AlphaContinuityReport alpha_continuity(
    const std::variant<EmpiricalMeasure, Analytic1DMeasure>& measure,
    const ClassSpec& cls, const SizeFunctional& f,
    const std::vector<double>& alphas, double delta);

struct ConverseRow {
  std::size_t n = 0;
  Interval tilted_minimizer;       // S_n (unique)
  double haus_sn_to_s = 0.0;       // -> 0
  double haus_s_to_sn = 0.0;       // -> alpha, bounded away from 0
};

struct ConverseReport {
  double alpha = 0.0;
  std::vector<ConverseRow> rows;
  double limit_haus_s_to_sn = 0.0;  // analytic limit (= alpha)

  nlohmann::json to_json() const;
};

// Closed-form demo of the one-sided convergence: tilted(n) minimizers
// against the uniform limit family. No sampling.
ConverseReport converse_demo(double alpha, const std::vector<std::size_t>& n_list);

// Thread-count hint (MASSLOCK_THREADS, default 1); results never depend on it.
std::size_t thread_hint();

}  // namespace masslock
