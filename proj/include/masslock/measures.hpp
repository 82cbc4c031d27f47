#pragma once
// Empirical measures, analytic 1-D reference measures, and seeded synthetic
// samplers (iid and ar1 chains) built on the counter-based RNG.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "masslock/descriptors.hpp"
#include "masslock/point_set.hpp"
#include "masslock/rng.hpp"

namespace masslock {

struct EmpiricalMeasure {
  PointSet support;
  std::vector<double> weights;
  bool uniform = true;  // every weight exactly 1/n

  static EmpiricalMeasure uniform_on(PointSet ps);
  static EmpiricalMeasure weighted(PointSet ps, std::vector<double> w);
  static EmpiricalMeasure load(const std::string& path);

  std::size_t size() const { return support.size(); }
};

// ---------------------------------------------------------------------------
// Analytic 1-D measures with closed-form CDFs.
// ---------------------------------------------------------------------------

enum class Density1D { uniform, tilted, gaussian };

struct Analytic1DMeasure {
  Density1D kind = Density1D::uniform;
  double a = 0.0, b = 1.0;      // uniform support
  double tilt_n = 1.0;          // tilted: f(x) = 1 + x/n on (-1/2, 1/2)
  double mean = 0.0, sd = 1.0;  // gaussian

  static Analytic1DMeasure uniform_on(double a, double b);
  static Analytic1DMeasure tilted(double n);
  static Analytic1DMeasure gaussian(double mean, double sd);
  static Analytic1DMeasure parse(const std::string& spec);  // "uniform:0:1"

  double cdf(double x) const;
  nlohmann::json to_json() const;
};

double interval_mass(const Analytic1DMeasure& m, double a, double b);

struct SmallestIntervalResult {
  Interval interval;
  double mass = 0.0;
  bool unique = true;
};

// Shortest interval with mass >= target_mass; bisection on the length with
// the per-density optimal placement, endpoints accurate to tol.
SmallestIntervalResult smallest_interval(const Analytic1DMeasure& m,
                                         double target_mass, double tol);

// ---------------------------------------------------------------------------
// Samplers
// ---------------------------------------------------------------------------

struct Distribution {
  enum class Kind { uniform_box, gaussian, mixture, circle, tilted };
  Kind kind = Kind::uniform_box;
  Vec lo{0.0}, hi{1.0};                  // uniform_box
  Vec mean{0.0};                         // gaussian
  double sd = 1.0;
  std::vector<double> mix_weights;       // mixture
  std::vector<Distribution> components;
  double radius = 1.0;                   // circle (in R^2)
  double tilt_n = 1.0;                   // tilted

  std::size_t dim() const;
  void draw(CounterRng& rng, Vec& out) const;
  nlohmann::json to_json() const;
  static Distribution from_json(const nlohmann::json& j);
};

enum class ChainKind { iid, ar1 };

struct Generator {
  Distribution dist;
  ChainKind chain = ChainKind::iid;
  double rho = 0.0;  // |rho| < 1
  std::uint64_t seed = 0;

  nlohmann::json to_json() const;
  static Generator from_json(const nlohmann::json& j);
};

// n points; identical (seed, n, distribution, chain) give bit-identical
// output. ar1 starts at stationarity with the declared Gaussian invariant law.
EmpiricalMeasure sample(const Generator& gen, std::size_t n);

// Analytic population measure matching a generator, when one exists
// (1-D uniform boxes, 1-D gaussians incl. ar1 chains, tilted).
std::optional<Analytic1DMeasure> population_of(const Generator& gen);

}  // namespace masslock
