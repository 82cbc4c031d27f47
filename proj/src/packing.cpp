#include "masslock/packing.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <unordered_map>

#include "masslock/errors.hpp"

namespace masslock {

namespace {

std::vector<std::size_t> full_range(std::size_t n) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  return idx;
}

bool is_line_geometry(const PointSet& space) {
  // 1-D euclidean and chebyshev coincide; wrap-1d is a circle, not a line.
  return space.has_coords() && space.dim() == 1 &&
         space.metric() != MetricKind::wrap1d;
}

// ---------------------------------------------------------------------------
// Exact packing on the line: sorted greedy is optimal.
// ---------------------------------------------------------------------------

std::size_t line_packing(std::vector<double> xs, double t) {
  std::sort(xs.begin(), xs.end());
  std::size_t count = 1;
  double last = xs.front();
  for (double v : xs)
    if (v - last > t) {
      ++count;
      last = v;
    }
  return count;
}

// ---------------------------------------------------------------------------
// Greedy farthest-point t-separated set (exact on nothing, a lower bound
// everywhere). Starts from the lexicographically smallest point.
// ---------------------------------------------------------------------------

std::size_t greedy_separated(const PointSet& space,
                             std::span<const std::size_t> subset, double t) {
  std::size_t start = subset[0];
  if (space.has_coords()) {
    for (auto i : subset)
      if (lex_less(space.point(i), space.point(start))) start = i;
  } else {
    start = *std::min_element(subset.begin(), subset.end());
  }
  std::vector<std::size_t> chosen = {start};
  std::vector<double> dist_to_chosen(subset.size());
  for (std::size_t k = 0; k < subset.size(); ++k)
    dist_to_chosen[k] = space.distance(subset[k], start);
  for (;;) {
    // Farthest candidate still strictly > t from every chosen point.
    std::size_t best_k = subset.size();
    for (std::size_t k = 0; k < subset.size(); ++k) {
      if (dist_to_chosen[k] <= t) continue;
      if (best_k == subset.size() || dist_to_chosen[k] > dist_to_chosen[best_k])
        best_k = k;
    }
    if (best_k == subset.size()) break;
    const std::size_t pick = subset[best_k];
    chosen.push_back(pick);
    for (std::size_t k = 0; k < subset.size(); ++k)
      dist_to_chosen[k] = std::min(dist_to_chosen[k], space.distance(subset[k], pick));
  }
  return chosen.size();
}

// ---------------------------------------------------------------------------
// Maximum independent set of the conflict graph (edges d <= t), by
// branch-and-bound over dynamic bitsets. Vertices pre-sorted by conflict
// degree descending.
// ---------------------------------------------------------------------------

struct BitSet {
  std::vector<std::uint64_t> w;
  explicit BitSet(std::size_t n) : w((n + 63) / 64, 0) {}
  void set(std::size_t i) { w[i >> 6] |= 1ULL << (i & 63); }
  bool empty() const {
    for (auto x : w)
      if (x) return false;
    return true;
  }
  std::size_t count() const {
    std::size_t c = 0;
    for (auto x : w) c += std::popcount(x);
    return c;
  }
  std::size_t first() const {
    for (std::size_t k = 0; k < w.size(); ++k)
      if (w[k]) return (k << 6) + std::countr_zero(w[k]);
    return w.size() << 6;
  }
  void remove(std::size_t i) { w[i >> 6] &= ~(1ULL << (i & 63)); }
  void subtract(const BitSet& o) {
    for (std::size_t k = 0; k < w.size(); ++k) w[k] &= ~o.w[k];
  }
};

struct MisSolver {
  std::vector<BitSet> adj;
  std::size_t best = 0;

  void run(BitSet cand, std::size_t current) {
    if (current + cand.count() <= best) return;
    if (cand.empty()) {
      best = std::max(best, current);
      return;
    }
    const std::size_t v = cand.first();  // highest remaining degree
    BitSet with = cand;
    with.remove(v);
    with.subtract(adj[v]);
    run(std::move(with), current + 1);
    cand.remove(v);
    run(std::move(cand), current);
  }
};

std::size_t bnb_packing(const PointSet& space,
                        std::span<const std::size_t> subset, double t,
                        const PackingCaps& caps) {
  const std::size_t m = subset.size();
  if (m > caps.exact_packing)
    throw CapacityError("exact packing mode capped at " +
                            std::to_string(caps.exact_packing) + " points (got " +
                            std::to_string(m) + ")",
                        m, caps.exact_packing);
  // Conflict degrees.
  std::vector<std::size_t> degree(m, 0);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      if (space.distance(subset[i], subset[j]) <= t) {
        ++degree[i];
        ++degree[j];
      }
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return degree[a] > degree[b];
  });

  MisSolver solver;
  solver.adj.assign(m, BitSet(m));
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a + 1; b < m; ++b)
      if (space.distance(subset[order[a]], subset[order[b]]) <= t) {
        solver.adj[a].set(b);
        solver.adj[b].set(a);
      }
  solver.best = greedy_separated(space, subset, t);
  BitSet all(m);
  for (std::size_t i = 0; i < m; ++i) all.set(i);
  solver.run(std::move(all), 0);
  return solver.best;
}

// ---------------------------------------------------------------------------
// Minimum enclosing ball (Welzl with move-to-front) for the euclidean
// 1-center feasibility test.
// ---------------------------------------------------------------------------

struct MiniBall {
  std::size_t d;
  Vec center;
  double r2 = -1.0;

  explicit MiniBall(std::size_t dim) : d(dim), center(dim, 0.0) {}

  bool inside(const Vec& p, double slack = 1e-12) const {
    if (r2 < 0.0) return false;
    double s = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      const double g = p[i] - center[i];
      s += g * g;
    }
    return s <= r2 + slack * (1.0 + r2);
  }

  // Smallest pair-diameter ball that encloses every support point.
  void pair_fallback(const std::vector<const Vec*>& support) {
    r2 = -1.0;
    Vec mid(d, 0.0);
    for (std::size_t i = 0; i < support.size(); ++i)
      for (std::size_t j = i + 1; j < support.size(); ++j) {
        double rr = 0.0;
        for (std::size_t c = 0; c < d; ++c) {
          mid[c] = ((*support[i])[c] + (*support[j])[c]) / 2.0;
          const double g = (*support[i])[c] - mid[c];
          rr += g * g;
        }
        bool covers = true;
        for (const Vec* p : support) {
          double s = 0.0;
          for (std::size_t c = 0; c < d; ++c) {
            const double g = (*p)[c] - mid[c];
            s += g * g;
          }
          if (s > rr + 1e-12 * (1.0 + rr)) {
            covers = false;
            break;
          }
        }
        if (covers && (r2 < 0.0 || rr < r2)) {
          center = mid;
          r2 = rr;
        }
      }
  }

  // Circumball of the support points (|support| <= d+1): solve
  // (p_i - p_0) . (c - p_0) = |p_i - p_0|^2 / 2 by Gaussian elimination.
  void from_support(const std::vector<const Vec*>& support) {
    const std::size_t m = support.size();
    if (m == 0) {
      r2 = -1.0;
      return;
    }
    if (m == 1) {
      center = *support[0];
      r2 = 0.0;
      return;
    }
    const Vec& p0 = *support[0];
    const std::size_t k = m - 1;
    std::vector<std::vector<double>> a(k, std::vector<double>(k + 1, 0.0));
    std::vector<Vec> basis(k, Vec(d, 0.0));
    for (std::size_t i = 0; i < k; ++i) {
      double norm2 = 0.0;
      for (std::size_t c = 0; c < d; ++c) {
        basis[i][c] = (*support[i + 1])[c] - p0[c];
        norm2 += basis[i][c] * basis[i][c];
      }
      for (std::size_t j = 0; j < k; ++j) {
        double dot = 0.0;
        for (std::size_t c = 0; c < d; ++c) dot += basis[i][c] * basis[j][c];
        a[i][j] = dot;
      }
      a[i][k] = norm2 / 2.0;
    }
    // Gaussian elimination with partial pivoting; the pivot threshold is
    // relative to the Gram scale so near-degenerate supports fall back to a
    // conservative pair ball instead of a garbage solve.
    double scale = 0.0;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) scale = std::max(scale, std::abs(a[i][j]));
    std::vector<double> lambda(k, 0.0);
    for (std::size_t col = 0; col < k; ++col) {
      std::size_t piv = col;
      for (std::size_t row = col + 1; row < k; ++row)
        if (std::abs(a[row][col]) > std::abs(a[piv][col])) piv = row;
      if (std::abs(a[piv][col]) <= scale * 1e-13) {
        pair_fallback(support);
        return;
      }
      std::swap(a[piv], a[col]);
      for (std::size_t row = col + 1; row < k; ++row) {
        const double f = a[row][col] / a[col][col];
        for (std::size_t cc = col; cc <= k; ++cc) a[row][cc] -= f * a[col][cc];
      }
    }
    for (std::size_t row = k; row-- > 0;) {
      double s = a[row][k];
      for (std::size_t cc = row + 1; cc < k; ++cc) s -= a[row][cc] * lambda[cc];
      lambda[row] = s / a[row][row];
    }
    center = p0;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t c = 0; c < d; ++c) center[c] += lambda[i] * basis[i][c];
    r2 = 0.0;
    for (std::size_t c = 0; c < d; ++c) {
      const double g = p0[c] - center[c];
      r2 += g * g;
    }
  }
};

MiniBall welzl(std::vector<const Vec*>& pts, std::vector<const Vec*> support,
               std::size_t n, std::size_t d) {
  MiniBall ball(d);
  ball.from_support(support);
  if (support.size() == d + 1) return ball;
  for (std::size_t i = 0; i < n; ++i) {
    if (ball.r2 >= 0.0 && ball.inside(*pts[i])) continue;
    support.push_back(pts[i]);
    MiniBall better = welzl(pts, support, i, d);
    support.pop_back();
    if (better.r2 >= 0.0) {
      ball = better;
      // Move-to-front keeps expected time linear.
      const Vec* p = pts[i];
      for (std::size_t k = i; k > 0; --k) pts[k] = pts[k - 1];
      pts[0] = p;
    }
  }
  return ball;
}

}  // namespace

double min_enclosing_radius(std::span<const Vec> pts, MetricKind metric) {
  if (pts.empty()) throw ArgumentError("min_enclosing_radius of empty set");
  const std::size_t d = pts.front().size();
  switch (metric) {
    case MetricKind::chebyshev: {
      double r = 0.0;
      for (std::size_t c = 0; c < d; ++c) {
        double lo = pts[0][c], hi = pts[0][c];
        for (const auto& p : pts) {
          lo = std::min(lo, p[c]);
          hi = std::max(hi, p[c]);
        }
        r = std::max(r, (hi - lo) / 2.0);
      }
      return r;
    }
    case MetricKind::wrap1d: {
      // Smallest covering arc = 1 - largest circular gap; its half-length
      // is the 1-center radius on the circle.
      std::vector<double> xs;
      xs.reserve(pts.size());
      for (const auto& p : pts) xs.push_back(p[0]);
      std::sort(xs.begin(), xs.end());
      double gap = 1.0 - xs.back() + xs.front();
      for (std::size_t i = 1; i < xs.size(); ++i)
        gap = std::max(gap, xs[i] - xs[i - 1]);
      return (1.0 - gap) / 2.0;
    }
    case MetricKind::euclidean: {
      if (d == 1) {
        double lo = pts[0][0], hi = pts[0][0];
        for (const auto& p : pts) {
          lo = std::min(lo, p[0]);
          hi = std::max(hi, p[0]);
        }
        return (hi - lo) / 2.0;
      }
      std::vector<const Vec*> ptrs;
      ptrs.reserve(pts.size());
      for (const auto& p : pts) ptrs.push_back(&p);
      MiniBall ball = welzl(ptrs, {}, ptrs.size(), d);
      return ball.r2 >= 0.0 ? std::sqrt(ball.r2) : 0.0;
    }
  }
  throw ArgumentError("min_enclosing_radius: bad metric");
}

std::size_t packing_number(const PointSet& space,
                           std::span<const std::size_t> subset, double t,
                           PackingMode mode, const PackingCaps& caps) {
  if (subset.empty()) throw ArgumentError("packing_number of empty set");
  if (!(t > 0.0)) throw ArgumentError("packing_number requires t > 0");
  for (auto i : subset)
    if (i >= space.size()) throw ArgumentError("subset index out of range");
  if (mode == PackingMode::lower_bound) return greedy_separated(space, subset, t);
  if (is_line_geometry(space)) {
    std::vector<double> xs;
    xs.reserve(subset.size());
    for (auto i : subset) xs.push_back(space.point(i)[0]);
    return line_packing(std::move(xs), t);
  }
  return bnb_packing(space, subset, t, caps);
}

std::size_t packing_number(const PointSet& space, double t, PackingMode mode,
                           const PackingCaps& caps) {
  return packing_number(space, full_range(space.size()), t, mode, caps);
}

// ---------------------------------------------------------------------------
// Covering
// ---------------------------------------------------------------------------

namespace {

// 1-center feasibility of subset groups (by position bitmask), memoized
// across the whole covering search.
struct CoverFeasibility {
  const PointSet& space;
  std::span<const std::size_t> subset;
  double t;
  mutable std::unordered_map<std::uint32_t, bool> cache;

  bool feasible(std::uint32_t mask) const {
    auto it = cache.find(mask);
    if (it != cache.end()) return it->second;
    bool ok;
    if (space.has_coords()) {
      std::vector<Vec> pts;
      for (std::size_t k = 0; k < subset.size(); ++k)
        if (mask & (1u << k)) pts.push_back(space.point(subset[k]));
      ok = min_enclosing_radius(pts, space.metric()) <= t;
    } else {
      // Matrix-backed: centers restricted to the space's own points.
      ok = false;
      for (std::size_t c = 0; c < space.size() && !ok; ++c) {
        bool fits = true;
        for (std::size_t k = 0; k < subset.size() && fits; ++k)
          if ((mask & (1u << k)) && space.distance(c, subset[k]) > t)
            fits = false;
        ok = fits;
      }
    }
    cache.emplace(mask, ok);
    return ok;
  }
};

// Can the subset be partitioned into at most k feasible groups? DFS assigns
// points in order; a fresh group may only open as the last group (kills
// permutation symmetry).
bool coverable(const CoverFeasibility& feas, std::size_t n_points, std::size_t k,
               std::size_t next, std::vector<std::uint32_t>& groups) {
  if (next == n_points) return true;
  const std::uint32_t bit = 1u << next;
  for (auto& g : groups) {
    g |= bit;
    if (feas.feasible(g) && coverable(feas, n_points, k, next + 1, groups))
      return true;
    g &= ~bit;
  }
  if (groups.size() < k) {
    groups.push_back(bit);
    if (coverable(feas, n_points, k, next + 1, groups)) return true;
    groups.pop_back();
  }
  return false;
}

std::size_t greedy_cover(const PointSet& space,
                         std::span<const std::size_t> subset, double t) {
  // Point-centered greedy set cover: valid balls, hence an upper bound.
  std::vector<bool> covered(subset.size(), false);
  std::size_t balls = 0;
  std::size_t remaining = subset.size();
  while (remaining > 0) {
    std::size_t best_center = 0, best_gain = 0;
    for (std::size_t c = 0; c < subset.size(); ++c) {
      std::size_t gain = 0;
      for (std::size_t i = 0; i < subset.size(); ++i)
        if (!covered[i] && space.distance(subset[c], subset[i]) <= t) ++gain;
      if (gain > best_gain) {
        best_gain = gain;
        best_center = c;
      }
    }
    for (std::size_t i = 0; i < subset.size(); ++i)
      if (!covered[i] && space.distance(subset[best_center], subset[i]) <= t) {
        covered[i] = true;
        --remaining;
      }
    ++balls;
  }
  return balls;
}

}  // namespace

std::size_t covering_number(const PointSet& space,
                            std::span<const std::size_t> subset, double t,
                            CoveringMode mode, const PackingCaps& caps) {
  if (subset.empty()) throw ArgumentError("covering_number of empty set");
  if (!(t > 0.0)) throw ArgumentError("covering_number requires t > 0");
  for (auto i : subset)
    if (i >= space.size()) throw ArgumentError("subset index out of range");
  if (mode == CoveringMode::upper_bound) return greedy_cover(space, subset, t);
  if (subset.size() > caps.exact_covering)
    throw CapacityError("exact covering mode capped at " +
                            std::to_string(caps.exact_covering) + " points (got " +
                            std::to_string(subset.size()) + ")",
                        subset.size(), caps.exact_covering);
  CoverFeasibility feas{space, subset, t, {}};
  const std::size_t ub = greedy_cover(space, subset, t);
  std::size_t lb = 1;
  {
    // M(B,2t) is a valid lower bound (Kolmogorov comparison).
    PackingCaps relaxed = caps;
    relaxed.exact_packing = std::max(relaxed.exact_packing, subset.size());
    lb = std::max<std::size_t>(
        1, packing_number(space, subset, 2.0 * t, PackingMode::exact, relaxed));
  }
  for (std::size_t k = lb; k < ub; ++k) {
    std::vector<std::uint32_t> groups;
    if (coverable(feas, subset.size(), k, 0, groups)) return k;
  }
  return ub;
}

std::size_t covering_number(const PointSet& space, double t, CoveringMode mode,
                            const PackingCaps& caps) {
  return covering_number(space, full_range(space.size()), t, mode, caps);
}

// ---------------------------------------------------------------------------
// Profiles
// ---------------------------------------------------------------------------

std::size_t PackingProfile::value_at(double t) const {
  if (!(t > 0.0)) throw ArgumentError("profile evaluation requires t > 0");
  if (breakpoints.empty() || t < breakpoints.front()) return n;
  // Largest breakpoint <= t.
  const auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), t);
  return values[static_cast<std::size_t>(it - breakpoints.begin()) - 1];
}

nlohmann::json PackingProfile::to_json() const {
  return nlohmann::json{{"breakpoints", breakpoints}, {"values", values}, {"n", n}};
}

PackingProfile PackingProfile::from_json(const nlohmann::json& j) {
  PackingProfile p;
  p.breakpoints = j.at("breakpoints").get<std::vector<double>>();
  p.values = j.at("values").get<std::vector<std::size_t>>();
  p.n = j.at("n").get<std::size_t>();
  return p;
}

PackingProfile packing_profile(const PointSet& space,
                               std::span<const std::size_t> subset,
                               const PackingCaps& caps) {
  if (subset.empty()) throw ArgumentError("packing_profile of empty set");
  PackingProfile profile;
  profile.n = subset.size();
  std::vector<double> dists;
  dists.reserve(subset.size() * (subset.size() - 1) / 2);
  for (std::size_t a = 0; a < subset.size(); ++a)
    for (std::size_t b = a + 1; b < subset.size(); ++b)
      dists.push_back(space.distance(subset[a], subset[b]));
  std::sort(dists.begin(), dists.end());
  dists.erase(std::unique(dists.begin(), dists.end()), dists.end());
  profile.breakpoints = std::move(dists);
  profile.values.reserve(profile.breakpoints.size());
  for (double b : profile.breakpoints)
    profile.values.push_back(
        packing_number(space, subset, b, PackingMode::exact, caps));
  return profile;
}

PackingProfile packing_profile(const PointSet& space, const PackingCaps& caps) {
  return packing_profile(space, full_range(space.size()), caps);
}

bool comparison_check(const PointSet& space, std::span<const std::size_t> subset,
                      double t, const PackingCaps& caps) {
  const std::size_t m2t =
      packing_number(space, subset, 2.0 * t, PackingMode::exact, caps);
  const std::size_t nt =
      covering_number(space, subset, t, CoveringMode::exact, caps);
  const std::size_t mt =
      packing_number(space, subset, t, PackingMode::exact, caps);
  return m2t <= nt && nt <= mt;
}

bool comparison_check(const PointSet& space, double t, const PackingCaps& caps) {
  return comparison_check(space, full_range(space.size()), t, caps);
}

}  // namespace masslock
