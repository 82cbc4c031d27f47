#include "masslock/geometry.hpp"

#include <cmath>

#include "masslock/errors.hpp"

namespace masslock {

MetricKind metric_from_string(const std::string& s) {
  if (s == "euclidean") return MetricKind::euclidean;
  if (s == "chebyshev") return MetricKind::chebyshev;
  if (s == "wrap-1d" || s == "wrap1d") return MetricKind::wrap1d;
  throw ArgumentError("unknown metric: " + s);
}

std::string to_string(MetricKind kind) {
  switch (kind) {
    case MetricKind::euclidean: return "euclidean";
    case MetricKind::chebyshev: return "chebyshev";
    case MetricKind::wrap1d: return "wrap-1d";
  }
  return "?";
}

double point_distance(std::span<const double> a, std::span<const double> b,
                      MetricKind kind) {
  if (a.size() != b.size())
    throw ArgumentError("point_distance: dimension mismatch");
  switch (kind) {
    case MetricKind::euclidean: {
      double s = 0.0;
      for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
      }
      return std::sqrt(s);
    }
    case MetricKind::chebyshev: {
      double m = 0.0;
      for (std::size_t i = 0; i < a.size(); ++i)
        m = std::max(m, std::abs(a[i] - b[i]));
      return m;
    }
    case MetricKind::wrap1d: {
      if (a.size() != 1)
        throw ArgumentError("wrap-1d metric requires 1-D points");
      const double d = std::abs(a[0] - b[0]);
      return std::min(d, 1.0 - d);
    }
  }
  throw ArgumentError("point_distance: bad metric");
}

bool lex_less(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] < b[i]) return true;
    if (a[i] > b[i]) return false;
  }
  return a.size() < b.size();
}

}  // namespace masslock
