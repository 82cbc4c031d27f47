#include "masslock/size_fn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "masslock/errors.hpp"

namespace masslock {

namespace {

double power_integral(double a, double b, double p) {
  // integral of t^p over [a,b], p > -1
  const double s = p + 1.0;
  return (std::pow(b, s) - std::pow(a, s)) / s;
}

}  // namespace

double SizeFunctional::weight_integral(double a, double b) const {
  a = std::max(a, 0.0);
  b = std::min(b, t_max);
  if (b <= a) return 0.0;
  switch (weight) {
    case WeightKind::linear: return (b * b - a * a) / 2.0;
    case WeightKind::constant: return b - a;
    case WeightKind::power: return power_integral(a, b, power);
  }
  return 0.0;
}

nlohmann::json SizeFunctional::to_json() const {
  nlohmann::json j;
  switch (weight) {
    case WeightKind::linear: j["weight"] = "linear"; break;
    case WeightKind::constant: j["weight"] = "constant"; break;
    case WeightKind::power:
      j["weight"] = "power";
      j["power"] = power;
      break;
  }
  j["t_max"] = t_max;
  return j;
}

SizeFunctional SizeFunctional::from_json(const nlohmann::json& j) {
  SizeFunctional f;
  const std::string w = j.value("weight", "linear");
  if (w == "linear") {
    f.weight = WeightKind::linear;
  } else if (w == "constant") {
    f.weight = WeightKind::constant;
  } else if (w == "power") {
    f.weight = WeightKind::power;
    f.power = j.at("power").get<double>();
    if (!(f.power > 0.0)) throw ArgumentError("power weight requires p > 0");
  } else {
    throw ArgumentError("unknown weight: " + w);
  }
  f.t_max = j.value("t_max", 1.0);
  if (!(f.t_max > 0.0)) throw ArgumentError("t_max must be > 0");
  return f;
}

double tau_of_profile(const PackingProfile& profile, const SizeFunctional& f) {
  if (profile.n == 0) throw ArgumentError("tau of an empty profile");
  double tau = 0.0;
  double left = 0.0;
  std::size_t value = profile.n;
  for (std::size_t k = 0; k < profile.breakpoints.size(); ++k) {
    const double right = profile.breakpoints[k];
    tau += static_cast<double>(value) * f.weight_integral(left, right);
    left = right;
    value = profile.values[k];
    if (left >= f.t_max) return tau;
  }
  tau += static_cast<double>(value) * f.weight_integral(left, f.t_max);
  return tau;
}

double zeta_tail(double s, std::uint64_t j0) {
  if (!(s > 1.0)) throw ArgumentError("zeta_tail requires s > 1");
  if (j0 == 0) throw ArgumentError("zeta_tail requires j0 >= 1");
  double sum = 0.0;
  const std::uint64_t head = 32;
  std::uint64_t j = j0;
  if (s == 2.0) {
    for (std::uint64_t k = 0; k < head; ++k, ++j) {
      const double dj = static_cast<double>(j);
      sum += 1.0 / (dj * dj);
    }
  } else {
    for (std::uint64_t k = 0; k < head; ++k, ++j)
      sum += std::pow(static_cast<double>(j), -s);
  }
  // Euler-Maclaurin remainder from J = j0 + head.
  const double J = static_cast<double>(j);
  const double Js = std::pow(J, -s);
  sum += J * Js / (s - 1.0);          // J^{1-s}/(s-1)
  sum += Js / 2.0;
  sum += s * Js / J / 12.0;           // s*J^{-s-1}/12
  sum -= s * (s + 1.0) * (s + 2.0) * Js / (J * J * J) / 720.0;
  return sum;
}

double tau_interval(double length, const SizeFunctional& f) {
  if (length < 0.0) throw ArgumentError("interval length must be >= 0");
  if (length == 0.0) return f.weight_integral(0.0, f.t_max);
  if (f.weight == WeightKind::constant)
    return std::numeric_limits<double>::infinity();
  const double p = f.weight == WeightKind::linear ? 1.0 : f.power;
  const double s = p + 1.0;
  const double L = length;
  const double T = f.t_max;
  // ceil(L/t) = k on [L/k, L/(k-1)); k0 is the piece containing min(T, L).
  if (T >= L) {
    // sum_{k>=2} k * W(L/k, L/(k-1))  +  1 * W(L, T)
    const double series = std::pow(L, s) / s * (1.0 + zeta_tail(s, 1));
    return series + f.weight_integral(L, T);
  }
  const double ratio = L / T;
  std::uint64_t k0 = static_cast<std::uint64_t>(std::ceil(ratio));
  if (k0 < 1) k0 = 1;
  // Guard against ceil landing just below the true integer ratio.
  if (static_cast<double>(k0) < ratio) ++k0;
  const double partial =
      static_cast<double>(k0) * f.weight_integral(L / static_cast<double>(k0), T);
  const double tail =
      std::pow(L, s) / s *
      (std::pow(static_cast<double>(k0), -p) + zeta_tail(s, k0));
  return partial + tail;
}

nlohmann::json SizeBackend::to_json() const {
  nlohmann::json j{{"backend", name()}};
  if (kind == SizeBackendKind::grid) j["grid_step"] = grid_step;
  return j;
}

std::string SizeBackend::name() const {
  switch (kind) {
    case SizeBackendKind::finite: return "finite";
    case SizeBackendKind::interval_exact: return "interval-exact";
    case SizeBackendKind::grid: return "grid";
  }
  return "?";
}

std::vector<Vec> grid_points_inside(const SetDescriptor& d, double step,
                                    MetricKind metric) {
  if (!(step > 0.0)) throw ArgumentError("grid step must be > 0");
  Vec lo, hi;
  bounding_box(d, lo, hi);
  const std::size_t dim = lo.size();
  std::vector<std::int64_t> kmin(dim), kmax(dim);
  constexpr std::uint64_t kGridCap = 1u << 21;
  std::uint64_t cells = 1;
  for (std::size_t c = 0; c < dim; ++c) {
    if (!std::isfinite(lo[c]) || !std::isfinite(hi[c]))
      throw CapacityError("grid backend requires a bounded descriptor", 0, kGridCap);
    kmin[c] = static_cast<std::int64_t>(std::ceil(lo[c] / step - 1e-9));
    kmax[c] = static_cast<std::int64_t>(std::floor(hi[c] / step + 1e-9));
    const std::uint64_t span =
        kmax[c] >= kmin[c] ? static_cast<std::uint64_t>(kmax[c] - kmin[c] + 1) : 0;
    if (span == 0) return {};
    if (cells > kGridCap / span)
      throw CapacityError("grid larger than cap", cells * span, kGridCap);
    cells *= span;
  }
  std::vector<Vec> out;
  std::vector<std::int64_t> k = kmin;
  Vec p(dim);
  for (;;) {
    for (std::size_t c = 0; c < dim; ++c) p[c] = static_cast<double>(k[c]) * step;
    if (contains(d, p, metric)) out.push_back(p);
    std::size_t c = dim;
    while (c-- > 0) {
      if (++k[c] <= kmax[c]) break;
      k[c] = kmin[c];
      if (c == 0) return out;
    }
  }
}

double tau_of_descriptor(const SetDescriptor& d, const SizeFunctional& f,
                         const SizeBackend& backend, MetricKind metric,
                         const PackingCaps& caps) {
  switch (backend.kind) {
    case SizeBackendKind::finite: {
      if (!std::holds_alternative<FiniteSubset>(d))
        throw ArgumentError("finite backend requires a finite-subset descriptor");
      const auto& fs = std::get<FiniteSubset>(d);
      PointSet ps = PointSet::from_coords(fs.points, metric);
      return tau_of_profile(packing_profile(ps, caps), f);
    }
    case SizeBackendKind::interval_exact: {
      if (std::holds_alternative<Interval>(d)) {
        const auto& iv = std::get<Interval>(d);
        return tau_interval(iv.hi - iv.lo, f);
      }
      if (std::holds_alternative<Ball>(d) && descriptor_dim(d) == 1)
        return tau_interval(2.0 * std::get<Ball>(d).radius, f);
      throw ArgumentError("interval-exact backend requires a 1-D interval");
    }
    case SizeBackendKind::grid: {
      auto pts = grid_points_inside(d, backend.grid_step, metric);
      if (pts.empty())
        throw DegenerateProbeError("grid misses the descriptor entirely");
      PointSet ps = PointSet::from_coords(std::move(pts), metric);
      return tau_of_profile(packing_profile(ps, caps), f);
    }
  }
  throw ArgumentError("bad size backend");
}

}  // namespace masslock
