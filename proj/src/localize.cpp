#include "masslock/localize.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

#include "masslock/errors.hpp"
#include "masslock/metric_core.hpp"

namespace masslock {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Contained sample indices, ascending.
std::vector<std::size_t> contained_indices(const SetDescriptor& d,
                                           const PointSet& sp) {
  if (std::holds_alternative<FiniteSubset>(d)) {
    auto idx = std::get<FiniteSubset>(d).indices;
    std::sort(idx.begin(), idx.end());
    return idx;
  }
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < sp.size(); ++i)
    if (contains(d, sp.point(i), sp.metric())) idx.push_back(i);
  return idx;
}

// tau of a candidate under the problem backend.
double candidate_tau(const SetDescriptor& d, const LocalizationProblem& p,
                     const EmpiricalMeasure& mu) {
  switch (p.backend.kind) {
    case SizeBackendKind::interval_exact:
      return tau_of_descriptor(d, p.functional, p.backend,
                               mu.support.metric(), p.caps);
    case SizeBackendKind::finite: {
      const auto idx = contained_indices(d, mu.support);
      if (idx.empty()) return kInf;  // empty trace: infeasible anyway
      return tau_of_profile(packing_profile(mu.support, idx, p.caps),
                            p.functional);
    }
    case SizeBackendKind::grid:
      return tau_of_descriptor(d, p.functional, p.backend,
                               mu.support.metric(), p.caps);
  }
  return kInf;
}

struct ScanState {
  double threshold;  // 1 - alpha
  double slack;
  double best_tau = kInf;
  double best_mass = 0.0;
  double max_mass_seen = 0.0;
  bool have_best = false;
  SetDescriptor best;
  std::vector<std::pair<double, SetDescriptor>> near;  // (tau, candidate)

  void offer(const SetDescriptor& d, double mass, double tau) {
    max_mass_seen = std::max(max_mass_seen, mass);
    if (!(mass >= threshold)) return;
    if (tau < best_tau) {
      best_tau = tau;
      best_mass = mass;
      best = d;
      have_best = true;
      std::erase_if(near, [&](const auto& e) {
        return e.first > best_tau + slack;
      });
    }
    if (tau <= best_tau + slack) near.emplace_back(tau, d);
  }

  LocalizationResult finish(std::uint64_t candidate_count) const {
    if (!have_best)
      throw InfeasibleError(
          "no candidate reaches the mass constraint (max achievable mass " +
              std::to_string(max_mass_seen) + ")",
          max_mass_seen);
    LocalizationResult res;
    res.minimizer = best;
    res.tau_value = best_tau;
    res.achieved_mass = best_mass;
    res.candidate_count = candidate_count;
    res.slack = slack;
    res.near_minimizers.reserve(near.size());
    for (const auto& [tau, d] : near)
      if (tau <= best_tau + slack) res.near_minimizers.push_back(d);
    return res;
  }
};

// ---------------------------------------------------------------------------
// Generic exhaustive scan over the candidate stream.
// ---------------------------------------------------------------------------

LocalizationResult scan_generic(const LocalizationProblem& p,
                                const EmpiricalMeasure& mu, double slack) {
  ScanState st{1.0 - p.alpha, slack};
  std::uint64_t emitted = 0;
  try {
    emitted = for_each_candidate(p.cls, mu, p.alpha, [&](const SetDescriptor& d) {
      const double mass = descriptor_mass(d, mu);
      // Mass-first: skip the tau evaluation of infeasible candidates.
      if (mass >= st.threshold)
        st.offer(d, mass, candidate_tau(d, p, mu));
      else
        st.max_mass_seen = std::max(st.max_mass_seen, mass);
      return true;
    });
  } catch (const BudgetExceeded&) {
    if (st.have_best) throw;  // truncated after a feasible candidate: unreliable
    throw InfeasibleError(
        "candidate budget exhausted before any feasible candidate "
        "(max achievable mass " +
            std::to_string(st.max_mass_seen) + ")",
        st.max_mass_seen);
  }
  return st.finish(emitted);
}

// ---------------------------------------------------------------------------
// Interval fast path: uniform measures only. Equivalent to the exhaustive
// scan because tau_interval is strictly increasing in length, so for each
// left endpoint only windows with tau within slack of the running minimum
// can matter; everything longer is provably dominated.
// ---------------------------------------------------------------------------

struct SortedSample {
  std::vector<double> values;  // distinct ascending
  std::vector<std::size_t> count_le;  // sample points <= values[i]
};

SortedSample sorted_sample(const PointSet& sp) {
  std::vector<double> xs;
  xs.reserve(sp.size());
  for (std::size_t i = 0; i < sp.size(); ++i) xs.push_back(sp.point(i)[0]);
  std::sort(xs.begin(), xs.end());
  SortedSample s;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (s.values.empty() || xs[i] != s.values.back()) {
      s.values.push_back(xs[i]);
      s.count_le.push_back(i + 1);
    } else {
      s.count_le.back() = i + 1;
    }
  }
  return s;
}

LocalizationResult scan_intervals_uniform(const LocalizationProblem& p,
                                          const EmpiricalMeasure& mu,
                                          double slack) {
  const SortedSample s = sorted_sample(mu.support);
  const std::size_t m = s.values.size();
  const double n = static_cast<double>(mu.size());
  auto window_mass = [&](std::size_t i, std::size_t j) {
    const std::size_t below = i == 0 ? 0 : s.count_le[i - 1];
    return static_cast<double>(s.count_le[j] - below) / n;
  };
  ScanState st{1.0 - p.alpha, slack};
  const std::uint64_t logical_count =
      static_cast<std::uint64_t>(m) * (m + 1) / 2;
  if (logical_count > p.cls.candidate_budget)
    throw CapacityError("candidate budget exceeded: interval class has " +
                            std::to_string(logical_count) + " candidates",
                        logical_count, p.cls.candidate_budget);

  // Pass 1: find the minimum. For each i, the first feasible j gives the
  // shortest (hence smallest-tau) feasible window at i.
  for (std::size_t i = 0; i < m; ++i) {
    std::size_t j = i;
    while (j < m && window_mass(i, j) < st.threshold) ++j;
    if (j == m) {
      st.max_mass_seen = std::max(st.max_mass_seen, window_mass(i, m - 1));
      continue;
    }
    const double tau = tau_interval(s.values[j] - s.values[i], p.functional);
    st.offer(Interval{s.values[i], s.values[j]}, window_mass(i, j), tau);
  }
  if (!st.have_best) return st.finish(logical_count);  // throws

  // Pass 2: rebuild the near set in stream order with the final minimum.
  ScanState st2{1.0 - p.alpha, slack};
  st2.max_mass_seen = st.max_mass_seen;
  const double cutoff = st.best_tau + slack;
  for (std::size_t i = 0; i < m; ++i) {
    std::size_t j = i;
    while (j < m && window_mass(i, j) < st2.threshold) ++j;
    for (; j < m; ++j) {
      const double tau = tau_interval(s.values[j] - s.values[i], p.functional);
      if (tau > cutoff) break;  // longer windows only grow tau
      st2.offer(Interval{s.values[i], s.values[j]}, window_mass(i, j), tau);
    }
  }
  return st2.finish(logical_count);
}

LocalizationResult solve_analytic(const LocalizationProblem& p, double slack) {
  const auto& m = std::get<Analytic1DMeasure>(p.measure);
  if (p.cls.family != Family::intervals && p.cls.family != Family::balls)
    throw ArgumentError(
        "analytic measures solve over intervals (or 1-D balls) only");
  const auto res = smallest_interval(m, 1.0 - p.alpha, 1e-12);
  LocalizationResult out;
  out.minimizer = res.interval;
  out.tau_value = tau_interval(res.interval.hi - res.interval.lo, p.functional);
  out.achieved_mass = res.mass;
  out.near_minimizers = {res.interval};
  out.candidate_count = 1;
  out.slack = slack;
  out.minimizer_unique = res.unique;
  return out;
}

}  // namespace

SizeBackend default_backend(Family family, std::size_t dim) {
  SizeBackend b;
  if (family == Family::intervals || (family == Family::balls && dim == 1))
    b.kind = SizeBackendKind::interval_exact;
  else
    b.kind = SizeBackendKind::finite;
  return b;
}

nlohmann::json LocalizationResult::to_json() const {
  nlohmann::json j;
  j["minimizer"] = descriptor_to_json(minimizer);
  j["tau"] = tau_value;
  j["mass"] = achieved_mass;
  j["slack"] = slack;
  j["candidate_count"] = candidate_count;
  j["minimizer_unique"] = minimizer_unique;
  auto& nm = j["near_minimizers"] = nlohmann::json::array();
  for (const auto& d : near_minimizers) nm.push_back(descriptor_to_json(d));
  return j;
}

LocalizationResult solve(const LocalizationProblem& p, double slack) {
  if (!(p.alpha > 0.0 && p.alpha < 1.0))
    throw ArgumentError("alpha must be in (0,1)");
  if (slack < 0.0) throw ArgumentError("slack must be >= 0");
  if (std::holds_alternative<Analytic1DMeasure>(p.measure))
    return solve_analytic(p, slack);
  const auto& mu = std::get<EmpiricalMeasure>(p.measure);
  if (p.cls.family == Family::intervals && mu.uniform &&
      p.backend.kind == SizeBackendKind::interval_exact &&
      mu.support.dim() == 1)
    return scan_intervals_uniform(p, mu, slack);
  return scan_generic(p, mu, slack);
}

namespace detail {
LocalizationResult solve_empirical_generic(const LocalizationProblem& p,
                                           double slack) {
  const auto& mu = std::get<EmpiricalMeasure>(p.measure);
  return scan_generic(p, mu, slack);
}
}  // namespace detail

LocalizationResult oracle_min(const PointSet& space,
                              const std::vector<double>& weights, double alpha,
                              const SizeFunctional& f, const PackingCaps& caps) {
  constexpr std::size_t kOracleCap = 20;
  const std::size_t n = space.size();
  if (n > kOracleCap)
    throw CapacityError("oracle_min capped at " + std::to_string(kOracleCap) +
                            " points (got " + std::to_string(n) + ")",
                        n, kOracleCap);
  if (!(alpha > 0.0 && alpha < 1.0))
    throw ArgumentError("alpha must be in (0,1)");
  std::vector<double> w = weights;
  if (w.empty()) w.assign(n, 1.0 / static_cast<double>(n));
  if (w.size() != n) throw ArgumentError("one weight per point required");
  const bool uniform = weights.empty();
  const double threshold = 1.0 - alpha;

  ScanState st{threshold, 1e-9};
  std::vector<std::size_t> stack;
  std::uint64_t total = 0;
  // Lexicographic prefix order over non-empty subsets, as in the
  // finite-subsets class stream.
  std::function<void(std::size_t, double)> dfs = [&](std::size_t from,
                                                     double wsum) {
    for (std::size_t i = from; i < n; ++i) {
      stack.push_back(i);
      const double mass =
          uniform ? static_cast<double>(stack.size()) / static_cast<double>(n)
                  : wsum + w[i];
      ++total;
      if (mass >= threshold) {
        const double tau =
            tau_of_profile(packing_profile(space, stack, caps), f);
        st.offer(make_finite_subset(space, stack), mass, tau);
      } else {
        st.max_mass_seen = std::max(st.max_mass_seen, mass);
      }
      dfs(i + 1, uniform ? 0.0 : wsum + w[i]);
      stack.pop_back();
    }
  };
  dfs(0, 0.0);
  return st.finish(total);
}

std::vector<std::pair<double, double>> tau_alpha_curve(
    const LocalizationProblem& p, const std::vector<double>& alphas) {
  if (alphas.empty()) throw ArgumentError("alpha list must be non-empty");
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    if (!(alphas[i] > 0.0 && alphas[i] < 1.0))
      throw ArgumentError("alphas must be in (0,1)");
    if (i > 0 && !(alphas[i - 1] <= alphas[i]))
      throw ArgumentError("alphas must be sorted ascending");
  }
  std::vector<std::pair<double, double>> out;
  out.reserve(alphas.size());

  if (std::holds_alternative<Analytic1DMeasure>(p.measure)) {
    for (double a : alphas) {
      LocalizationProblem q = p;
      q.alpha = a;
      out.emplace_back(a, solve(q, 0.0).tau_value);
    }
    return out;
  }

  const auto& mu = std::get<EmpiricalMeasure>(p.measure);
  if (p.cls.family == Family::intervals && mu.uniform &&
      p.backend.kind == SizeBackendKind::interval_exact &&
      mu.support.dim() == 1) {
    for (double a : alphas) {
      LocalizationProblem q = p;
      q.alpha = a;
      out.emplace_back(a, solve(q, 0.0).tau_value);
    }
    return out;
  }

  // Generic: evaluate (mass, tau) once per candidate, reuse across alphas.
  struct Entry {
    double mass;
    double tau;
  };
  std::vector<Entry> entries;
  for_each_candidate(p.cls, mu, alphas.front(), [&](const SetDescriptor& d) {
    entries.push_back({descriptor_mass(d, mu), -1.0});
    return true;
  });
  // tau lazily: candidates re-enumerated once for tau of those that can
  // matter under the loosest constraint.
  std::size_t pos = 0;
  for_each_candidate(p.cls, mu, alphas.front(), [&](const SetDescriptor& d) {
    Entry& e = entries[pos++];
    if (e.mass >= 1.0 - alphas.back()) {
      LocalizationProblem q = p;
      e.tau = candidate_tau(d, q, mu);
    }
    return true;
  });
  for (double a : alphas) {
    const double threshold = 1.0 - a;
    double best = kInf;
    double max_mass = 0.0;
    for (const auto& e : entries) {
      max_mass = std::max(max_mass, e.mass);
      if (e.mass >= threshold && e.tau >= 0.0 && e.tau < best) best = e.tau;
    }
    if (best == kInf)
      throw InfeasibleError("no feasible candidate at alpha " +
                                std::to_string(a) + " (max achievable mass " +
                                std::to_string(max_mass) + ")",
                            max_mass);
    out.emplace_back(a, best);
  }
  return out;
}

}  // namespace masslock
