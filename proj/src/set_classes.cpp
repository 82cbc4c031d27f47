#include "masslock/set_classes.hpp"

#include <algorithm>
#include <cmath>

#include "masslock/errors.hpp"

namespace masslock {

Family family_from_string(const std::string& s) {
  if (s == "intervals") return Family::intervals;
  if (s == "balls") return Family::balls;
  if (s == "boxes") return Family::boxes;
  if (s == "separated-union" || s == "separated_union")
    return Family::separated_union;
  if (s == "finite-subsets" || s == "finite_subsets")
    return Family::finite_subsets;
  throw ArgumentError("unknown class family: " + s);
}

std::string to_string(Family f) {
  switch (f) {
    case Family::intervals: return "intervals";
    case Family::balls: return "balls";
    case Family::boxes: return "boxes";
    case Family::separated_union: return "separated-union";
    case Family::finite_subsets: return "finite-subsets";
  }
  return "?";
}

nlohmann::json ClassSpec::to_json() const {
  nlohmann::json j{{"family", to_string(family)},
                   {"budget", candidate_budget}};
  if (family == Family::separated_union) {
    j["union_k"] = union_k;
    j["union_eps"] = union_eps;
  }
  if (!extra_centers.empty()) j["extra_centers"] = extra_centers;
  return j;
}

ClassSpec ClassSpec::from_json(const nlohmann::json& j) {
  ClassSpec s;
  s.family = family_from_string(j.at("family").get<std::string>());
  s.union_k = j.value("union_k", 2);
  s.union_eps = j.value("union_eps", 1.0);
  s.candidate_budget = j.value("budget", std::uint64_t{10'000'000});
  if (j.contains("extra_centers"))
    s.extra_centers = j.at("extra_centers").get<std::vector<Vec>>();
  if (s.family == Family::separated_union) {
    if (s.union_k < 1 || s.union_k > 3)
      throw ArgumentError("separated-union supports 1 <= k <= 3");
    if (!(s.union_eps > 0.0)) throw ArgumentError("union eps must be > 0");
  }
  return s;
}

double descriptor_mass(const SetDescriptor& d, const EmpiricalMeasure& mu) {
  const PointSet& sp = mu.support;
  // Finite subsets are index-based; membership is definitional.
  if (std::holds_alternative<FiniteSubset>(d)) {
    const auto& f = std::get<FiniteSubset>(d);
    if (mu.uniform)
      return static_cast<double>(f.indices.size()) /
             static_cast<double>(mu.size());
    double s = 0.0;
    for (auto i : f.indices) {
      if (i >= mu.size()) throw ArgumentError("subset index out of range");
      s += mu.weights[i];
    }
    return s;
  }
  std::size_t count = 0;
  double s = 0.0;
  for (std::size_t i = 0; i < sp.size(); ++i) {
    if (contains(d, sp.point(i), sp.metric())) {
      ++count;
      s += mu.weights[i];
    }
  }
  if (mu.uniform)
    return static_cast<double>(count) / static_cast<double>(mu.size());
  return s;
}

namespace {

struct Budget {
  std::uint64_t limit;
  std::uint64_t used = 0;

  void spend() {
    if (++used > limit)
      throw BudgetExceeded("candidate budget exceeded after " +
                               std::to_string(used) + " candidates",
                           used, limit);
  }
};

using Visit = std::function<bool(const SetDescriptor&)>;

std::vector<double> sorted_distinct_coord(const PointSet& sp, std::size_t c) {
  std::vector<double> v;
  v.reserve(sp.size());
  for (std::size_t i = 0; i < sp.size(); ++i) v.push_back(sp.point(i)[c]);
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

bool emit_intervals(const PointSet& sp, Budget& budget, const Visit& visit) {
  if (sp.dim() != 1)
    throw ArgumentError("interval class requires 1-D samples");
  const auto v = sorted_distinct_coord(sp, 0);
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i; j < v.size(); ++j) {
      budget.spend();
      if (!visit(Interval{v[i], v[j]})) return false;
    }
  return true;
}

// Ball candidates: centers sorted lexicographically (sample points plus the
// optional extra grid), radii ascending at exact center-to-sample distances.
std::vector<Ball> ball_candidates(const PointSet& sp,
                                  const std::vector<Vec>& extra_centers) {
  std::vector<Vec> centers = sp.points();
  centers.insert(centers.end(), extra_centers.begin(), extra_centers.end());
  std::sort(centers.begin(), centers.end(),
            [](const Vec& a, const Vec& b) { return lex_less(a, b); });
  centers.erase(std::unique(centers.begin(), centers.end()), centers.end());
  std::vector<Ball> out;
  std::vector<double> radii;
  for (const auto& c : centers) {
    radii.clear();
    for (std::size_t i = 0; i < sp.size(); ++i)
      radii.push_back(point_distance(c, sp.point(i), sp.metric()));
    std::sort(radii.begin(), radii.end());
    radii.erase(std::unique(radii.begin(), radii.end()), radii.end());
    for (double r : radii) out.push_back(Ball{c, r});
  }
  return out;
}

bool emit_balls(const PointSet& sp, const std::vector<Vec>& extra,
                Budget& budget, const Visit& visit) {
  for (const auto& b : ball_candidates(sp, extra)) {
    budget.spend();
    if (!visit(b)) return false;
  }
  return true;
}

bool emit_boxes(const PointSet& sp, Budget& budget, const Visit& visit) {
  const std::size_t d = sp.dim();
  std::vector<std::vector<double>> axis(d);
  for (std::size_t c = 0; c < d; ++c) axis[c] = sorted_distinct_coord(sp, c);
  // Odometer over per-coordinate (lo index, hi index) pairs, lexicographic
  // in (lo_0, hi_0, lo_1, hi_1, ...).
  std::vector<std::size_t> li(d, 0), hi(d, 0);
  Vec lo(d), up(d);
  for (;;) {
    for (std::size_t c = 0; c < d; ++c) {
      lo[c] = axis[c][li[c]];
      up[c] = axis[c][hi[c]];
    }
    budget.spend();
    if (!visit(Box{lo, up})) return false;
    std::size_t c = d;
    while (c-- > 0) {
      if (++hi[c] < axis[c].size()) break;
      if (++li[c] < axis[c].size()) {
        hi[c] = li[c];
        break;
      }
      li[c] = hi[c] = 0;
      if (c == 0) return true;
    }
  }
}

bool emit_unions(const PointSet& sp, const ClassSpec& spec, Budget& budget,
                 const Visit& visit) {
  if (spec.union_k < 1 || spec.union_k > 3)
    throw ArgumentError("separated-union supports 1 <= k <= 3");
  const auto balls = ball_candidates(sp, spec.extra_centers);
  const std::size_t m = balls.size();
  const MetricKind metric = sp.metric();
  auto gap_ok = [&](const Ball& a, const Ball& b) {
    return point_distance(a.center, b.center, metric) - a.radius - b.radius >=
           spec.union_eps;
  };
  // j-tuples in ascending combination order, sizes j = 1..k.
  for (int j = 1; j <= spec.union_k; ++j) {
    std::vector<std::size_t> pick(static_cast<std::size_t>(j));
    // Initialize to the first combination.
    for (int c = 0; c < j; ++c) pick[static_cast<std::size_t>(c)] = static_cast<std::size_t>(c);
    if (static_cast<std::size_t>(j) > m) break;
    for (;;) {
      bool ok = true;
      for (std::size_t a = 0; a < pick.size() && ok; ++a)
        for (std::size_t b = a + 1; b < pick.size() && ok; ++b)
          if (!gap_ok(balls[pick[a]], balls[pick[b]])) ok = false;
      if (ok) {
        SeparatedUnion u;
        u.separation = spec.union_eps;
        for (auto idx : pick) u.parts.push_back(balls[idx]);
        budget.spend();
        if (!visit(u)) return false;
      }
      // Next combination.
      std::size_t c = pick.size();
      while (c-- > 0) {
        if (++pick[c] <= m - (pick.size() - c)) {
          for (std::size_t cc = c + 1; cc < pick.size(); ++cc)
            pick[cc] = pick[cc - 1] + 1;
          break;
        }
        if (c == 0) goto next_size;
      }
    }
  next_size:;
  }
  return true;
}

bool emit_subsets(const PointSet& sp, Budget& budget, const Visit& visit) {
  constexpr std::size_t kSubsetCap = 20;
  const std::size_t n = sp.size();
  if (n > kSubsetCap)
    throw CapacityError("finite-subsets class capped at " +
                            std::to_string(kSubsetCap) + " points (got " +
                            std::to_string(n) + ")",
                        n, kSubsetCap);
  // Lexicographic prefix order: {0}, {0,1}, {0,1,2}, ..., {0,2}, ..., {n-1}.
  std::vector<std::size_t> stack;
  std::function<bool(std::size_t)> dfs = [&](std::size_t from) -> bool {
    for (std::size_t i = from; i < n; ++i) {
      stack.push_back(i);
      budget.spend();
      if (!visit(make_finite_subset(sp, stack))) return false;
      if (!dfs(i + 1)) return false;
      stack.pop_back();
    }
    return true;
  };
  return dfs(0);
}

}  // namespace

std::uint64_t for_each_candidate(const ClassSpec& spec,
                                 const EmpiricalMeasure& mu, double alpha,
                                 const Visit& visit) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw ArgumentError("alpha must be in (0,1)");
  const PointSet& sp = mu.support;
  if (!sp.has_coords())
    throw ArgumentError("candidate enumeration requires coordinate samples");
  Budget budget{spec.candidate_budget};
  switch (spec.family) {
    case Family::intervals: emit_intervals(sp, budget, visit); break;
    case Family::balls: emit_balls(sp, spec.extra_centers, budget, visit); break;
    case Family::boxes: emit_boxes(sp, budget, visit); break;
    case Family::separated_union: emit_unions(sp, spec, budget, visit); break;
    case Family::finite_subsets: emit_subsets(sp, budget, visit); break;
  }
  return budget.used;
}

std::vector<SetDescriptor> enumerate_candidates(const ClassSpec& spec,
                                                const EmpiricalMeasure& mu,
                                                double alpha) {
  std::vector<SetDescriptor> out;
  for_each_candidate(spec, mu, alpha, [&](const SetDescriptor& d) {
    out.push_back(d);
    return true;
  });
  return out;
}

}  // namespace masslock
