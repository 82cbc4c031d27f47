#pragma once
// Coordinate points and the three supported metrics.

#include <span>
#include <string>
#include <vector>

namespace masslock {

using Vec = std::vector<double>;

// wrap1d is the circle metric min(|x-y|, 1-|x-y|) on [0,1); 1-D only.
enum class MetricKind { euclidean, chebyshev, wrap1d };

MetricKind metric_from_string(const std::string& s);
std::string to_string(MetricKind kind);

double point_distance(std::span<const double> a, std::span<const double> b,
                      MetricKind kind);

bool lex_less(std::span<const double> a, std::span<const double> b);

}  // namespace masslock
