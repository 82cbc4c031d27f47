#pragma once
// Finite substrate for every computation: n points backed either by
// coordinates (dimension + metric tag) or by an explicit distance matrix.
//
// Invariants checked on construction / load:
//   - explicit matrix: symmetric, zero diagonal, non-negative, triangle
//     inequality within 1e-9;
//   - points distinct (no zero off-diagonal distance);
//   - n >= 1.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "masslock/geometry.hpp"

namespace masslock {

class PointSet {
 public:
  PointSet() = default;  // empty placeholder; factories enforce invariants

  static PointSet from_coords(std::vector<Vec> coords,
                              MetricKind metric = MetricKind::euclidean);
  static PointSet from_matrix(std::vector<std::vector<double>> matrix);

  // CSV: one point per row, d numeric columns, header optional; a trailing
  // column named "w"/"weight"/"weights" is read as weights.
  // JSON: {"dim":d,"points":[[..],..]} or {"matrix":[[..],..]}, optional
  // "metric" and "weights".
  static PointSet load(const std::string& path,
                       std::optional<std::vector<double>>* weights_out = nullptr);

  std::size_t size() const { return n_; }
  bool has_coords() const { return !coords_.empty(); }
  std::size_t dim() const { return has_coords() ? coords_.front().size() : 0; }
  MetricKind metric() const { return metric_; }
  const Vec& point(std::size_t i) const { return coords_[i]; }
  const std::vector<Vec>& points() const { return coords_; }

  double distance(std::size_t i, std::size_t j) const;

  void save_csv(const std::string& path,
                const std::vector<double>* weights = nullptr) const;
  void save_json(const std::string& path,
                 const std::vector<double>* weights = nullptr) const;

 private:
  std::size_t n_ = 0;
  std::vector<Vec> coords_;                   // empty when matrix-backed
  std::vector<std::vector<double>> matrix_;   // empty when coordinate-backed
  MetricKind metric_ = MetricKind::euclidean;
};

}  // namespace masslock
