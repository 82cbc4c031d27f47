#include "masslock/point_set.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "masslock/errors.hpp"

namespace masslock {

namespace {

constexpr double kMatrixTol = 1e-9;

void validate_matrix(const std::vector<std::vector<double>>& m) {
  const std::size_t n = m.size();
  if (n == 0) throw ArgumentError("point set must contain at least one point");
  for (const auto& row : m)
    if (row.size() != n) throw ArgumentError("distance matrix must be square");
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(m[i][i]) > 0.0)
      throw ArgumentError("distance matrix diagonal must be zero");
    for (std::size_t j = 0; j < n; ++j) {
      if (m[i][j] < 0.0) throw ArgumentError("distances must be non-negative");
      if (std::abs(m[i][j] - m[j][i]) > kMatrixTol)
        throw ArgumentError("distance matrix must be symmetric");
      if (i != j && m[i][j] == 0.0)
        throw ArgumentError("points must be distinct (zero off-diagonal distance)");
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (m[i][j] > m[i][k] + m[k][j] + kMatrixTol)
          throw ArgumentError("distance matrix violates the triangle inequality");
}

void validate_coords(const std::vector<Vec>& coords, MetricKind metric) {
  if (coords.empty())
    throw ArgumentError("point set must contain at least one point");
  const std::size_t d = coords.front().size();
  if (d == 0) throw ArgumentError("points must have at least one coordinate");
  for (const auto& p : coords) {
    if (p.size() != d) throw ArgumentError("all points must share one dimension");
    for (double v : p)
      if (!std::isfinite(v)) throw ArgumentError("coordinates must be finite");
  }
  if (metric == MetricKind::wrap1d) {
    if (d != 1) throw ArgumentError("wrap-1d metric requires 1-D points");
    for (const auto& p : coords)
      if (p[0] < 0.0 || p[0] >= 1.0)
        throw ArgumentError("wrap-1d points must lie in [0,1)");
  }
  // Duplicate detection via lexicographic sort of indices.
  std::vector<std::size_t> order(coords.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return lex_less(coords[a], coords[b]);
  });
  for (std::size_t k = 1; k < order.size(); ++k)
    if (coords[order[k - 1]] == coords[order[k]])
      throw ArgumentError("points must be distinct");
}

bool parse_row(const std::string& line, std::vector<double>& out) {
  out.clear();
  std::string token;
  std::stringstream ss(line);
  while (std::getline(ss, token, ',')) {
    const char* begin = token.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    while (end && *end == ' ') ++end;
    if (end == begin || (end && *end != '\0')) return false;
    out.push_back(v);
  }
  return !out.empty();
}

}  // namespace

PointSet PointSet::from_coords(std::vector<Vec> coords, MetricKind metric) {
  validate_coords(coords, metric);
  PointSet ps;
  ps.n_ = coords.size();
  ps.coords_ = std::move(coords);
  ps.metric_ = metric;
  return ps;
}

PointSet PointSet::from_matrix(std::vector<std::vector<double>> matrix) {
  validate_matrix(matrix);
  PointSet ps;
  ps.n_ = matrix.size();
  ps.matrix_ = std::move(matrix);
  return ps;
}

double PointSet::distance(std::size_t i, std::size_t j) const {
  if (i >= n_ || j >= n_) throw ArgumentError("point index out of range");
  if (!matrix_.empty()) return matrix_[i][j];
  if (i == j) return 0.0;
  return point_distance(coords_[i], coords_[j], metric_);
}

PointSet PointSet::load(const std::string& path,
                        std::optional<std::vector<double>>* weights_out) {
  if (weights_out) weights_out->reset();
  const bool json_file = path.size() > 5 && path.substr(path.size() - 5) == ".json";
  if (json_file) {
    std::ifstream in(path);
    if (!in) throw ArgumentError("cannot open " + path);
    nlohmann::json j;
    in >> j;
    if (j.contains("matrix")) {
      auto m = j.at("matrix").get<std::vector<std::vector<double>>>();
      if (weights_out && j.contains("weights"))
        *weights_out = j.at("weights").get<std::vector<double>>();
      return from_matrix(std::move(m));
    }
    auto pts = j.at("points").get<std::vector<Vec>>();
    if (j.contains("dim")) {
      const std::size_t d = j.at("dim").get<std::size_t>();
      for (const auto& p : pts)
        if (p.size() != d)
          throw ArgumentError("point dimension disagrees with \"dim\"");
    }
    MetricKind metric = MetricKind::euclidean;
    if (j.contains("metric"))
      metric = metric_from_string(j.at("metric").get<std::string>());
    if (weights_out && j.contains("weights"))
      *weights_out = j.at("weights").get<std::vector<double>>();
    return from_coords(std::move(pts), metric);
  }

  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot open " + path);
  std::vector<Vec> rows;
  std::vector<double> row;
  std::string line;
  bool first = true;
  bool weight_column = false;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == '\n'))
      line.pop_back();
    if (line.empty()) continue;
    if (!parse_row(line, row)) {
      if (!first) throw ArgumentError("malformed CSV row: " + line);
      // Header row; a final w/weight column marks weights.
      std::string last = line.substr(line.find_last_of(',') + 1);
      while (!last.empty() && last.front() == ' ') last.erase(last.begin());
      weight_column = (last == "w" || last == "weight" || last == "weights");
      first = false;
      continue;
    }
    first = false;
    rows.push_back(row);
  }
  if (rows.empty()) throw ArgumentError("no points in " + path);
  std::vector<double> weights;
  if (weight_column) {
    for (auto& r : rows) {
      if (r.size() < 2) throw ArgumentError("weight column requires >= 2 columns");
      weights.push_back(r.back());
      r.pop_back();
    }
    if (weights_out) *weights_out = std::move(weights);
  }
  return from_coords(std::move(rows), MetricKind::euclidean);
}

void PointSet::save_csv(const std::string& path,
                        const std::vector<double>* weights) const {
  if (!has_coords()) throw ArgumentError("cannot save matrix-backed set as CSV");
  std::ofstream out(path);
  if (!out) throw ArgumentError("cannot write " + path);
  char buf[64];
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t c = 0; c < dim(); ++c) {
      std::snprintf(buf, sizeof buf, "%.17g", coords_[i][c]);
      out << (c ? "," : "") << buf;
    }
    if (weights) {
      std::snprintf(buf, sizeof buf, "%.17g", (*weights)[i]);
      out << ',' << buf;
    }
    out << '\n';
  }
}

void PointSet::save_json(const std::string& path,
                         const std::vector<double>* weights) const {
  nlohmann::json j;
  if (has_coords()) {
    j["dim"] = dim();
    j["metric"] = to_string(metric_);
    j["points"] = coords_;
  } else {
    j["matrix"] = matrix_;
  }
  if (weights) j["weights"] = *weights;
  std::ofstream out(path);
  if (!out) throw ArgumentError("cannot write " + path);
  out << j.dump(2) << '\n';
}

}  // namespace masslock
