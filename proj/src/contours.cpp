#include "kquant/contours.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace kq {

Polyline inverse_contour(const SampleSet& sample, double r, int m,
                         const SolverConfig& cfg) {
  if (sample.dim() != 2) throw DimensionMismatch("inverse_contour requires d = 2");
  if (!(r >= 0.0 && r < 1.0))
    throw DomainViolation("contour radius must lie in [0, 1), got " + std::to_string(r));
  if (m < 3) throw DomainViolation("contour resolution m must be >= 3");

  Polyline verts;
  verts.reserve(static_cast<std::size_t>(m));

  if (r == 0.0) {
    const SolverReport median = solve_quantile(sample, Direction(Eigen::Vector2d::Zero()), cfg);
    verts.assign(static_cast<std::size_t>(m), Eigen::Vector2d(median.quantile));
    return verts;
  }

  SolverConfig vertex_cfg = cfg;
  for (int j = 0; j < m; ++j) {
    const double theta = 2.0 * std::numbers::pi * static_cast<double>(j) / m;
    const Direction v(Eigen::Vector2d(r * std::cos(theta), r * std::sin(theta)));
    const SolverReport rep = solve_quantile(sample, v, vertex_cfg);
    if (!rep.converged)
      throw Error("inverse_contour: vertex " + std::to_string(j) + " at r = " +
                  std::to_string(r) + " exceeded max_iter");
    verts.emplace_back(rep.quantile);
    // warm start the neighbor
    vertex_cfg.init = SolverConfig::Init::Given;
    vertex_cfg.init_point = rep.quantile;
  }
  return verts;
}

ContourSet compute_contours(const SampleSet& sample, std::vector<double> radii, int m,
                            const SolverConfig& cfg) {
  std::sort(radii.begin(), radii.end());
  ContourSet out;
  out.radii = radii;
  out.resolution = m;
  out.polylines.reserve(radii.size());
  for (double r : radii) out.polylines.push_back(inverse_contour(sample, r, m, cfg));
  return out;
}

std::vector<TransformValue> forward_image(const SampleSet& sample,
                                          const std::vector<EvalPoint>& points) {
  std::vector<TransformValue> out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back(k_transform(sample, p));
  return out;
}

std::vector<OutlierRow> classify_outliers(const SampleSet& sample, double threshold,
                                          bool leave_one_out) {
  if (!(threshold > 0.0 && threshold <= 1.0))
    throw DomainViolation("outlier threshold must lie in (0, 1]");
  const Eigen::MatrixXd& x = sample.points();
  const Eigen::Index n = x.rows();
  if (leave_one_out && n < 2)
    throw DomainViolation("leave-one-out scoring needs n >= 2");

  std::vector<OutlierRow> rows;
  rows.reserve(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::VectorXd xi = x.row(i).transpose();
    Eigen::VectorXd acc = Eigen::VectorXd::Zero(sample.dim());
    for (Eigen::Index j = 0; j < n; ++j) {
      if (leave_one_out && j == i) continue;
      const Eigen::VectorXd diff = xi - x.row(j).transpose();
      const double r = diff.norm();
      if (r > kDefaultExcludeRadius) acc += diff / r;
    }
    const double divisor = static_cast<double>(leave_one_out ? n - 1 : n);
    const double norm = (acc / divisor).norm();
    rows.push_back({i, norm, norm >= threshold});
  }
  return rows;
}

bool point_in_polygon(const Eigen::Vector2d& p, const Polyline& polygon) {
  const std::size_t n = polygon.size();
  if (n < 3) throw DomainViolation("polygon needs at least 3 vertices");
  bool inside = false;
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const auto& a = polygon[i];
    const auto& b = polygon[j];
    const bool crosses = (a.y() > p.y()) != (b.y() > p.y());
    if (crosses) {
      const double x_at = a.x() + (p.y() - a.y()) / (b.y() - a.y()) * (b.x() - a.x());
      if (p.x() < x_at) inside = !inside;
    }
  }
  return inside;
}

}  // namespace kq
