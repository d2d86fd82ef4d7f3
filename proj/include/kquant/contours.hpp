#ifndef KQUANT_CONTOURS_HPP_
#define KQUANT_CONTOURS_HPP_

#include <vector>

#include "kquant/solver.hpp"
#include "kquant/types.hpp"

namespace kq {

using Polyline = std::vector<Eigen::Vector2d>;

/// Inverse K-transform images of concentric circles. For d = 2 the
/// polylines are closed (last vertex adjacent to first) and nested in the
/// order of the radii.
struct ContourSet {
  std::vector<double> radii;        // in [0, 1), ascending
  std::vector<Polyline> polylines;  // one per radius, m vertices each
  int resolution = 0;               // m
};

inline constexpr int kDefaultContourResolution = 360;

/// Vertex j solves the quantile problem at direction r*(cos, sin)(2*pi*j/m),
/// warm-started from vertex j-1. r = 0 collapses to m copies of the
/// geometric median.
Polyline inverse_contour(const SampleSet& sample, double r, int m,
                         const SolverConfig& cfg = SolverConfig{});

/// inverse_contour over several radii (sorted ascending in the result).
ContourSet compute_contours(const SampleSet& sample, std::vector<double> radii, int m,
                            const SolverConfig& cfg = SolverConfig{});

/// Element-wise K-transform of a point list.
std::vector<TransformValue> forward_image(const SampleSet& sample,
                                          const std::vector<EvalPoint>& points);

struct OutlierRow {
  Eigen::Index index = 0;
  double norm = 0.0;
  bool is_outlier = false;
};

/// Flags x_i iff the transform norm at x_i reaches the threshold. With
/// leave_one_out the transform is taken against the other n-1 points
/// (divisor n-1), avoiding the undefined self-term direction.
std::vector<OutlierRow> classify_outliers(const SampleSet& sample, double threshold,
                                          bool leave_one_out = true);

/// Even-odd ray-crossing test; boundary points are not guaranteed either way.
bool point_in_polygon(const Eigen::Vector2d& p, const Polyline& polygon);

}  // namespace kq

#endif  // KQUANT_CONTOURS_HPP_
