#include "masslock/descriptors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "masslock/errors.hpp"

namespace masslock {

namespace {

constexpr double kPointTol = 1e-12;  // finite-subset membership tolerance

void require_dim(std::span<const double> x, std::size_t d, const char* what) {
  if (x.size() != d)
    throw ArgumentError(std::string(what) + ": dimension mismatch");
}

// Encoded parameter vector used for the lexicographic candidate order.
void encode(const SetDescriptor& d, std::vector<double>& out) {
  out.clear();
  switch (d.index()) {
    case 0: {
      const auto& iv = std::get<Interval>(d);
      out = {0.0, iv.lo, iv.hi};
      break;
    }
    case 1: {
      const auto& b = std::get<Ball>(d);
      out.push_back(1.0);
      out.insert(out.end(), b.center.begin(), b.center.end());
      out.push_back(b.radius);
      break;
    }
    case 2: {
      const auto& b = std::get<Box>(d);
      out.push_back(2.0);
      out.insert(out.end(), b.lo.begin(), b.lo.end());
      out.insert(out.end(), b.hi.begin(), b.hi.end());
      break;
    }
    case 3: {
      const auto& u = std::get<SeparatedUnion>(d);
      out.push_back(3.0);
      out.push_back(static_cast<double>(u.parts.size()));
      for (const auto& b : u.parts) {
        out.insert(out.end(), b.center.begin(), b.center.end());
        out.push_back(b.radius);
      }
      break;
    }
    case 4: {
      const auto& f = std::get<FiniteSubset>(d);
      out.push_back(4.0);
      for (auto i : f.indices) out.push_back(static_cast<double>(i));
      break;
    }
  }
}

}  // namespace

void validate(const SetDescriptor& d) {
  switch (d.index()) {
    case 0: {
      const auto& iv = std::get<Interval>(d);
      if (!(iv.lo <= iv.hi)) throw ArgumentError("interval requires lo <= hi");
      break;
    }
    case 1: {
      const auto& b = std::get<Ball>(d);
      if (b.center.empty()) throw ArgumentError("ball requires a center");
      if (b.radius < 0.0) throw ArgumentError("ball radius must be >= 0");
      break;
    }
    case 2: {
      const auto& b = std::get<Box>(d);
      if (b.lo.empty() || b.lo.size() != b.hi.size())
        throw ArgumentError("box corners must share one dimension");
      for (std::size_t i = 0; i < b.lo.size(); ++i)
        if (!(b.lo[i] <= b.hi[i]))
          throw ArgumentError("box requires lo <= hi coordinatewise");
      break;
    }
    case 3: {
      const auto& u = std::get<SeparatedUnion>(d);
      if (u.parts.empty()) throw ArgumentError("union requires >= 1 component");
      if (!(u.separation > 0.0))
        throw ArgumentError("union separation must be > 0");
      for (const auto& b : u.parts) validate(SetDescriptor(b));
      break;
    }
    case 4: {
      const auto& f = std::get<FiniteSubset>(d);
      if (f.indices.empty()) throw ArgumentError("finite subset must be non-empty");
      if (f.points.size() != f.indices.size())
        throw ArgumentError("finite subset points/indices mismatch");
      auto idx = f.indices;
      std::sort(idx.begin(), idx.end());
      if (std::adjacent_find(idx.begin(), idx.end()) != idx.end())
        throw ArgumentError("finite subset indices must be distinct");
      break;
    }
  }
}

std::size_t descriptor_dim(const SetDescriptor& d) {
  switch (d.index()) {
    case 0: return 1;
    case 1: return std::get<Ball>(d).center.size();
    case 2: return std::get<Box>(d).lo.size();
    case 3: return std::get<SeparatedUnion>(d).parts.front().center.size();
    case 4: return std::get<FiniteSubset>(d).points.front().size();
  }
  return 0;
}

bool contains(const SetDescriptor& d, std::span<const double> x,
              MetricKind metric) {
  switch (d.index()) {
    case 0: {
      const auto& iv = std::get<Interval>(d);
      require_dim(x, 1, "interval membership");
      if (metric == MetricKind::wrap1d)
        throw ArgumentError("interval descriptors are not defined under wrap-1d");
      return iv.lo <= x[0] && x[0] <= iv.hi;
    }
    case 1: {
      const auto& b = std::get<Ball>(d);
      require_dim(x, b.center.size(), "ball membership");
      return point_distance(x, b.center, metric) <= b.radius;
    }
    case 2: {
      const auto& b = std::get<Box>(d);
      require_dim(x, b.lo.size(), "box membership");
      if (metric == MetricKind::wrap1d)
        throw ArgumentError("box descriptors are not defined under wrap-1d");
      for (std::size_t i = 0; i < b.lo.size(); ++i)
        if (x[i] < b.lo[i] || x[i] > b.hi[i]) return false;
      return true;
    }
    case 3: {
      const auto& u = std::get<SeparatedUnion>(d);
      for (const auto& b : u.parts)
        if (contains(SetDescriptor(b), x, metric)) return true;
      return false;
    }
    case 4: {
      const auto& f = std::get<FiniteSubset>(d);
      for (const auto& p : f.points)
        if (point_distance(x, p, metric) <= kPointTol) return true;
      return false;
    }
  }
  return false;
}

double distance_to(const SetDescriptor& d, std::span<const double> x,
                   MetricKind metric) {
  switch (d.index()) {
    case 0: {
      const auto& iv = std::get<Interval>(d);
      require_dim(x, 1, "interval distance");
      if (metric == MetricKind::wrap1d)
        throw ArgumentError("interval descriptors are not defined under wrap-1d");
      return std::max({iv.lo - x[0], x[0] - iv.hi, 0.0});
    }
    case 1: {
      const auto& b = std::get<Ball>(d);
      require_dim(x, b.center.size(), "ball distance");
      return std::max(point_distance(x, b.center, metric) - b.radius, 0.0);
    }
    case 2: {
      const auto& b = std::get<Box>(d);
      require_dim(x, b.lo.size(), "box distance");
      switch (metric) {
        case MetricKind::euclidean: {
          double s = 0.0;
          for (std::size_t i = 0; i < b.lo.size(); ++i) {
            const double g = std::max({b.lo[i] - x[i], x[i] - b.hi[i], 0.0});
            s += g * g;
          }
          return std::sqrt(s);
        }
        case MetricKind::chebyshev: {
          double m = 0.0;
          for (std::size_t i = 0; i < b.lo.size(); ++i)
            m = std::max(m, std::max({b.lo[i] - x[i], x[i] - b.hi[i], 0.0}));
          return m;
        }
        case MetricKind::wrap1d:
          throw ArgumentError("box descriptors are not defined under wrap-1d");
      }
      return 0.0;
    }
    case 3: {
      const auto& u = std::get<SeparatedUnion>(d);
      double best = std::numeric_limits<double>::infinity();
      for (const auto& b : u.parts)
        best = std::min(best, distance_to(SetDescriptor(b), x, metric));
      return best;
    }
    case 4: {
      const auto& f = std::get<FiniteSubset>(d);
      double best = std::numeric_limits<double>::infinity();
      for (const auto& p : f.points)
        best = std::min(best, point_distance(x, p, metric));
      return best;
    }
  }
  return 0.0;
}

bool separation_ok(const SeparatedUnion& u, MetricKind metric) {
  for (std::size_t i = 0; i < u.parts.size(); ++i)
    for (std::size_t j = i + 1; j < u.parts.size(); ++j) {
      const double gap =
          point_distance(u.parts[i].center, u.parts[j].center, metric) -
          u.parts[i].radius - u.parts[j].radius;
      if (gap < u.separation) return false;
    }
  return true;
}

void bounding_box(const SetDescriptor& d, Vec& lo, Vec& hi) {
  switch (d.index()) {
    case 0: {
      const auto& iv = std::get<Interval>(d);
      lo = {iv.lo};
      hi = {iv.hi};
      return;
    }
    case 1: {
      const auto& b = std::get<Ball>(d);
      lo = b.center;
      hi = b.center;
      for (std::size_t i = 0; i < lo.size(); ++i) {
        lo[i] -= b.radius;
        hi[i] += b.radius;
      }
      return;
    }
    case 2: {
      const auto& b = std::get<Box>(d);
      lo = b.lo;
      hi = b.hi;
      return;
    }
    case 3: {
      const auto& u = std::get<SeparatedUnion>(d);
      bounding_box(SetDescriptor(u.parts.front()), lo, hi);
      Vec l2, h2;
      for (std::size_t k = 1; k < u.parts.size(); ++k) {
        bounding_box(SetDescriptor(u.parts[k]), l2, h2);
        for (std::size_t i = 0; i < lo.size(); ++i) {
          lo[i] = std::min(lo[i], l2[i]);
          hi[i] = std::max(hi[i], h2[i]);
        }
      }
      return;
    }
    case 4: {
      const auto& f = std::get<FiniteSubset>(d);
      lo = hi = f.points.front();
      for (const auto& p : f.points)
        for (std::size_t i = 0; i < lo.size(); ++i) {
          lo[i] = std::min(lo[i], p[i]);
          hi[i] = std::max(hi[i], p[i]);
        }
      return;
    }
  }
}

bool descriptor_less(const SetDescriptor& a, const SetDescriptor& b) {
  std::vector<double> ea, eb;
  encode(a, ea);
  encode(b, eb);
  return std::lexicographical_compare(ea.begin(), ea.end(), eb.begin(), eb.end());
}

bool descriptor_equal(const SetDescriptor& a, const SetDescriptor& b) {
  std::vector<double> ea, eb;
  encode(a, ea);
  encode(b, eb);
  return ea == eb;
}

nlohmann::json descriptor_to_json(const SetDescriptor& d) {
  nlohmann::json j;
  switch (d.index()) {
    case 0: {
      const auto& iv = std::get<Interval>(d);
      j["type"] = "interval";
      j["lo"] = iv.lo;
      j["hi"] = iv.hi;
      break;
    }
    case 1: {
      const auto& b = std::get<Ball>(d);
      j["type"] = "ball";
      j["center"] = b.center;
      j["radius"] = b.radius;
      break;
    }
    case 2: {
      const auto& b = std::get<Box>(d);
      j["type"] = "box";
      j["lo"] = b.lo;
      j["hi"] = b.hi;
      break;
    }
    case 3: {
      const auto& u = std::get<SeparatedUnion>(d);
      j["type"] = "separated_union";
      j["eps"] = u.separation;
      auto& parts = j["parts"] = nlohmann::json::array();
      for (const auto& b : u.parts)
        parts.push_back(descriptor_to_json(SetDescriptor(b)));
      break;
    }
    case 4: {
      const auto& f = std::get<FiniteSubset>(d);
      j["type"] = "finite_subset";
      j["indices"] = f.indices;
      j["points"] = f.points;
      break;
    }
  }
  return j;
}

SetDescriptor descriptor_from_json(const nlohmann::json& j) {
  const std::string type = j.at("type").get<std::string>();
  SetDescriptor d;
  if (type == "interval") {
    d = Interval{j.at("lo").get<double>(), j.at("hi").get<double>()};
  } else if (type == "ball") {
    d = Ball{j.at("center").get<Vec>(), j.at("radius").get<double>()};
  } else if (type == "box") {
    d = Box{j.at("lo").get<Vec>(), j.at("hi").get<Vec>()};
  } else if (type == "separated_union") {
    SeparatedUnion u;
    u.separation = j.at("eps").get<double>();
    for (const auto& pj : j.at("parts"))
      u.parts.push_back(std::get<Ball>(descriptor_from_json(pj)));
    d = std::move(u);
  } else if (type == "finite_subset") {
    FiniteSubset f;
    f.indices = j.at("indices").get<std::vector<std::size_t>>();
    f.points = j.at("points").get<std::vector<Vec>>();
    d = std::move(f);
  } else {
    throw ArgumentError("unknown descriptor type: " + type);
  }
  validate(d);
  return d;
}

FiniteSubset make_finite_subset(const PointSet& space,
                                std::vector<std::size_t> indices) {
  FiniteSubset f;
  f.points.reserve(indices.size());
  for (auto i : indices) {
    if (i >= space.size()) throw ArgumentError("finite subset index out of range");
    if (!space.has_coords())
      throw ArgumentError("finite subset over a matrix-backed space has no coordinates");
    f.points.push_back(space.point(i));
  }
  f.indices = std::move(indices);
  validate(SetDescriptor(f));
  return f;
}

}  // namespace masslock
