#pragma once
// Size functionals tau(B) = integral over (0, t_max] of phi(t) * M(B,t) dt,
// with exact piecewise integration over packing profiles and a closed form
// for 1-D intervals (M([0,L],t) = ceil(L/t)).

#include <string>
#include <vector>

#include <json.hpp>

#include "masslock/descriptors.hpp"
#include "masslock/packing.hpp"

namespace masslock {

enum class WeightKind { linear, constant, power };

struct SizeFunctional {
  WeightKind weight = WeightKind::linear;  // phi(t) = t, 1, or t^p
  double power = 1.0;                      // exponent for WeightKind::power, > 0
  double t_max = 1.0;

  // integral of phi over [a,b]∩[0,t_max], exact.
  double weight_integral(double a, double b) const;

  nlohmann::json to_json() const;
  static SizeFunctional from_json(const nlohmann::json& j);
};

double tau_of_profile(const PackingProfile& profile, const SizeFunctional& f);

// Exact value of the series sum_k k * integral of phi over the ceil(L/t)
// pieces; +infinity for the constant weight with L > 0.
double tau_interval(double length, const SizeFunctional& f);

enum class SizeBackendKind { finite, interval_exact, grid };

struct SizeBackend {
  SizeBackendKind kind = SizeBackendKind::finite;
  double grid_step = 0.0;  // grid backend only, > 0

  nlohmann::json to_json() const;
  std::string name() const;
};

// finite        -> exact profile of a FiniteSubset descriptor;
// interval_exact-> closed form for 1-D intervals (and 1-D balls);
// grid          -> profile of the descriptor's intersection with the
//                  origin-anchored grid of the given step.
double tau_of_descriptor(const SetDescriptor& d, const SizeFunctional& f,
                         const SizeBackend& backend,
                         MetricKind metric = MetricKind::euclidean,
                         const PackingCaps& caps = {});

// Origin-anchored grid points inside a bounded descriptor, lexicographic order.
std::vector<Vec> grid_points_inside(const SetDescriptor& d, double step,
                                    MetricKind metric = MetricKind::euclidean);

// Tail sum_{j >= j0} j^{-s} for s > 1 (explicit head + Euler-Maclaurin).
double zeta_tail(double s, std::uint64_t j0);

}  // namespace masslock
