#include "masslock/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "masslock/errors.hpp"

namespace masslock {

namespace {

constexpr double kWeightTol = 1e-12;
constexpr double kPi = 3.14159265358979323846;

void check_weights(const std::vector<double>& w, std::size_t n) {
  if (w.size() != n) throw ArgumentError("one weight per point required");
  double sum = 0.0;
  for (double v : w) {
    if (v < 0.0) throw ArgumentError("weights must be >= 0");
    sum += v;
  }
  if (std::abs(sum - 1.0) > kWeightTol)
    throw ArgumentError("weights must sum to 1");
}

}  // namespace

EmpiricalMeasure EmpiricalMeasure::uniform_on(PointSet ps) {
  EmpiricalMeasure mu;
  const std::size_t n = ps.size();
  mu.support = std::move(ps);
  mu.weights.assign(n, 1.0 / static_cast<double>(n));
  mu.uniform = true;
  return mu;
}

EmpiricalMeasure EmpiricalMeasure::weighted(PointSet ps, std::vector<double> w) {
  check_weights(w, ps.size());
  EmpiricalMeasure mu;
  mu.support = std::move(ps);
  mu.weights = std::move(w);
  mu.uniform = false;
  return mu;
}

EmpiricalMeasure EmpiricalMeasure::load(const std::string& path) {
  std::optional<std::vector<double>> w;
  PointSet ps = PointSet::load(path, &w);
  if (w) return weighted(std::move(ps), std::move(*w));
  return uniform_on(std::move(ps));
}

// ---------------------------------------------------------------------------
// Analytic measures
// ---------------------------------------------------------------------------

Analytic1DMeasure Analytic1DMeasure::uniform_on(double a, double b) {
  if (!(a < b)) throw ArgumentError("uniform measure requires a < b");
  Analytic1DMeasure m;
  m.kind = Density1D::uniform;
  m.a = a;
  m.b = b;
  return m;
}

Analytic1DMeasure Analytic1DMeasure::tilted(double n) {
  if (!(n >= 1.0)) throw ArgumentError("tilted density requires n >= 1");
  Analytic1DMeasure m;
  m.kind = Density1D::tilted;
  m.tilt_n = n;
  return m;
}

Analytic1DMeasure Analytic1DMeasure::gaussian(double mean, double sd) {
  if (!(sd > 0.0)) throw ArgumentError("gaussian sd must be > 0");
  Analytic1DMeasure m;
  m.kind = Density1D::gaussian;
  m.mean = mean;
  m.sd = sd;
  return m;
}

Analytic1DMeasure Analytic1DMeasure::parse(const std::string& spec) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ':')) parts.push_back(tok);
  if (parts.empty()) throw ArgumentError("empty analytic measure spec");
  auto num = [&](std::size_t i, double fallback) {
    return parts.size() > i ? std::stod(parts[i]) : fallback;
  };
  if (parts[0] == "uniform") return uniform_on(num(1, 0.0), num(2, 1.0));
  if (parts[0] == "tilted") return tilted(num(1, 1.0));
  if (parts[0] == "gaussian") return gaussian(num(1, 0.0), num(2, 1.0));
  throw ArgumentError("unknown analytic measure: " + parts[0]);
}

double Analytic1DMeasure::cdf(double x) const {
  switch (kind) {
    case Density1D::uniform:
      if (x <= a) return 0.0;
      if (x >= b) return 1.0;
      return (x - a) / (b - a);
    case Density1D::tilted: {
      if (x <= -0.5) return 0.0;
      if (x >= 0.5) return 1.0;
      // integral of 1 + s/n from -1/2 to x
      return (x + 0.5) + (x * x - 0.25) / (2.0 * tilt_n);
    }
    case Density1D::gaussian:
      return normal_cdf((x - mean) / sd);
  }
  return 0.0;
}

nlohmann::json Analytic1DMeasure::to_json() const {
  switch (kind) {
    case Density1D::uniform:
      return {{"density", "uniform"}, {"a", a}, {"b", b}};
    case Density1D::tilted:
      return {{"density", "tilted"}, {"n", tilt_n}};
    case Density1D::gaussian:
      return {{"density", "gaussian"}, {"mean", mean}, {"sd", sd}};
  }
  return {};
}

double interval_mass(const Analytic1DMeasure& m, double a, double b) {
  if (!(a <= b)) throw ArgumentError("interval_mass requires a <= b");
  return m.cdf(b) - m.cdf(a);
}

namespace {

// Optimal window of a given length: placement, mass, uniqueness.
struct Window {
  double lo;
  double mass;
  bool unique;
};

Window best_window(const Analytic1DMeasure& m, double len) {
  switch (m.kind) {
    case Density1D::uniform: {
      const double width = m.b - m.a;
      if (len >= width) return {m.a, 1.0, len <= width};
      return {m.a, len / width, false};  // any placement works: leftmost
    }
    case Density1D::tilted: {
      // Density increases to the right: rightmost window.
      const double lo = std::max(-0.5, 0.5 - len);
      return {lo, interval_mass(m, lo, 0.5), len < 1.0};
    }
    case Density1D::gaussian: {
      const double lo = m.mean - len / 2.0;
      return {lo, interval_mass(m, lo, lo + len), true};
    }
  }
  return {0.0, 0.0, true};
}

double support_width(const Analytic1DMeasure& m, double target) {
  switch (m.kind) {
    case Density1D::uniform: return m.b - m.a;
    case Density1D::tilted: return 1.0;
    case Density1D::gaussian:
      // Exact symmetric quantile width, padded to bracket the bisection.
      return 2.0 * m.sd * inverse_normal_cdf((1.0 + target) / 2.0) + 1.0;
  }
  return 1.0;
}

}  // namespace

SmallestIntervalResult smallest_interval(const Analytic1DMeasure& m,
                                         double target_mass, double tol) {
  if (!(tol > 0.0)) throw ArgumentError("tol must be > 0");
  if (!(target_mass > 0.0 && target_mass < 1.0))
    throw ArgumentError("target mass must be in (0,1)");
  double lo = 0.0;
  double hi = support_width(m, target_mass);
  while (best_window(m, hi).mass < target_mass) hi *= 2.0;
  while (hi - lo > tol) {
    const double mid = (lo + hi) / 2.0;
    if (best_window(m, mid).mass >= target_mass)
      hi = mid;
    else
      lo = mid;
  }
  const Window w = best_window(m, hi);
  SmallestIntervalResult res;
  res.interval = Interval{w.lo, w.lo + hi};
  res.mass = w.mass;
  res.unique = w.unique;
  return res;
}

// ---------------------------------------------------------------------------
// Distributions and sampling
// ---------------------------------------------------------------------------

std::size_t Distribution::dim() const {
  switch (kind) {
    case Kind::uniform_box: return lo.size();
    case Kind::gaussian: return mean.size();
    case Kind::mixture: return components.front().dim();
    case Kind::circle: return 2;
    case Kind::tilted: return 1;
  }
  return 0;
}

void Distribution::draw(CounterRng& rng, Vec& out) const {
  switch (kind) {
    case Kind::uniform_box: {
      out.resize(lo.size());
      for (std::size_t c = 0; c < lo.size(); ++c)
        out[c] = lo[c] + rng.next_unit() * (hi[c] - lo[c]);
      return;
    }
    case Kind::gaussian: {
      out.resize(mean.size());
      for (std::size_t c = 0; c < mean.size(); ++c)
        out[c] = mean[c] + sd * rng.next_normal();
      return;
    }
    case Kind::mixture: {
      const double u = rng.next_unit();
      double acc = 0.0;
      for (std::size_t k = 0; k < components.size(); ++k) {
        acc += mix_weights[k];
        if (u < acc || k + 1 == components.size()) {
          components[k].draw(rng, out);
          return;
        }
      }
      return;
    }
    case Kind::circle: {
      const double theta = 2.0 * kPi * rng.next_unit();
      out = {radius * std::cos(theta), radius * std::sin(theta)};
      return;
    }
    case Kind::tilted: {
      // Inverse of F(x) = (x + 1/2) + (x^2 - 1/4)/(2n):
      // x^2/(2n) + x + (1/2 - 1/(8n) - u) = 0, root in (-1/2, 1/2).
      const double u = rng.next_unit();
      const double n = tilt_n;
      const double c = 0.5 - 1.0 / (8.0 * n) - u;
      const double x = n * (-1.0 + std::sqrt(1.0 - 2.0 * c / n));
      out = {std::clamp(x, -0.5, std::nextafter(0.5, 0.0))};
      return;
    }
  }
}

nlohmann::json Distribution::to_json() const {
  nlohmann::json j;
  switch (kind) {
    case Kind::uniform_box:
      j["kind"] = "uniform-box";
      j["lo"] = lo;
      j["hi"] = hi;
      break;
    case Kind::gaussian:
      j["kind"] = "gaussian";
      j["mean"] = mean;
      j["sd"] = sd;
      break;
    case Kind::mixture: {
      j["kind"] = "mixture";
      j["weights"] = mix_weights;
      auto& cs = j["components"] = nlohmann::json::array();
      for (const auto& c : components) cs.push_back(c.to_json());
      break;
    }
    case Kind::circle:
      j["kind"] = "circle";
      j["radius"] = radius;
      break;
    case Kind::tilted:
      j["kind"] = "tilted";
      j["n"] = tilt_n;
      break;
  }
  return j;
}

Distribution Distribution::from_json(const nlohmann::json& j) {
  Distribution d;
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "uniform-box") {
    d.kind = Kind::uniform_box;
    d.lo = j.at("lo").get<Vec>();
    d.hi = j.at("hi").get<Vec>();
    if (d.lo.size() != d.hi.size() || d.lo.empty())
      throw ArgumentError("uniform-box corners must share one dimension");
    for (std::size_t c = 0; c < d.lo.size(); ++c)
      if (!(d.lo[c] < d.hi[c]))
        throw ArgumentError("uniform-box requires lo < hi");
  } else if (kind == "gaussian") {
    d.kind = Kind::gaussian;
    d.mean = j.at("mean").get<Vec>();
    d.sd = j.value("sd", 1.0);
    if (d.mean.empty() || !(d.sd > 0.0))
      throw ArgumentError("gaussian requires a mean vector and sd > 0");
  } else if (kind == "mixture") {
    d.kind = Kind::mixture;
    d.mix_weights = j.at("weights").get<std::vector<double>>();
    for (const auto& cj : j.at("components"))
      d.components.push_back(Distribution::from_json(cj));
    if (d.components.empty() || d.components.size() != d.mix_weights.size())
      throw ArgumentError("mixture weights/components mismatch");
    check_weights(d.mix_weights, d.mix_weights.size());
    for (const auto& c : d.components)
      if (c.dim() != d.components.front().dim())
        throw ArgumentError("mixture components must share one dimension");
  } else if (kind == "circle") {
    d.kind = Kind::circle;
    d.radius = j.value("radius", 1.0);
    if (!(d.radius > 0.0)) throw ArgumentError("circle radius must be > 0");
  } else if (kind == "tilted") {
    d.kind = Kind::tilted;
    d.tilt_n = j.at("n").get<double>();
    if (!(d.tilt_n >= 1.0)) throw ArgumentError("tilted requires n >= 1");
  } else {
    throw ArgumentError("unknown distribution kind: " + kind);
  }
  return d;
}

nlohmann::json Generator::to_json() const {
  nlohmann::json j;
  j["distribution"] = dist.to_json();
  j["chain"] = chain == ChainKind::iid ? "iid" : "ar1";
  if (chain == ChainKind::ar1) j["rho"] = rho;
  j["seed"] = seed;
  return j;
}

Generator Generator::from_json(const nlohmann::json& j) {
  Generator g;
  g.dist = Distribution::from_json(j.at("distribution"));
  const std::string chain = j.value("chain", "iid");
  if (chain == "iid") {
    g.chain = ChainKind::iid;
  } else if (chain == "ar1") {
    g.chain = ChainKind::ar1;
    g.rho = j.value("rho", 0.0);
    if (!(std::abs(g.rho) < 1.0)) throw ArgumentError("ar1 requires |rho| < 1");
    if (g.dist.kind != Distribution::Kind::gaussian)
      throw ArgumentError("ar1 chains require a gaussian invariant law");
  } else {
    throw ArgumentError("unknown chain: " + chain);
  }
  g.seed = j.value("seed", std::uint64_t{0});
  return g;
}

EmpiricalMeasure sample(const Generator& gen, std::size_t n) {
  if (n < 1) throw ArgumentError("sample size must be >= 1");
  if (gen.chain == ChainKind::ar1 &&
      gen.dist.kind != Distribution::Kind::gaussian)
    throw ArgumentError("ar1 chains require a gaussian invariant law");
  std::vector<Vec> pts(n);
  CounterRng rng(gen.seed);
  if (gen.chain == ChainKind::iid) {
    for (std::size_t i = 0; i < n; ++i) gen.dist.draw(rng, pts[i]);
  } else {
    const auto& mean = gen.dist.mean;
    const double sd = gen.dist.sd;
    const double rho = gen.rho;
    const double innov = sd * std::sqrt(1.0 - rho * rho);
    const std::size_t d = mean.size();
    pts[0].resize(d);
    for (std::size_t c = 0; c < d; ++c)
      pts[0][c] = mean[c] + sd * rng.next_normal();
    for (std::size_t i = 1; i < n; ++i) {
      pts[i].resize(d);
      for (std::size_t c = 0; c < d; ++c)
        pts[i][c] = mean[c] + rho * (pts[i - 1][c] - mean[c]) +
                    innov * rng.next_normal();
    }
  }
  return EmpiricalMeasure::uniform_on(PointSet::from_coords(std::move(pts)));
}

std::optional<Analytic1DMeasure> population_of(const Generator& gen) {
  const auto& d = gen.dist;
  switch (d.kind) {
    case Distribution::Kind::uniform_box:
      if (d.lo.size() == 1) return Analytic1DMeasure::uniform_on(d.lo[0], d.hi[0]);
      return std::nullopt;
    case Distribution::Kind::gaussian:
      if (d.mean.size() == 1) return Analytic1DMeasure::gaussian(d.mean[0], d.sd);
      return std::nullopt;
    case Distribution::Kind::tilted:
      return Analytic1DMeasure::tilted(d.tilt_n);
    default:
      return std::nullopt;
  }
}

}  // namespace masslock
