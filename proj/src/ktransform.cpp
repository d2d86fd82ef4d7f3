#include "kquant/ktransform.hpp"

#include <cmath>

namespace kq {

double k_function(const SampleSet& sample, const EvalPoint& s) {
  require_dim(sample, s, "k_function");
  if (!s.allFinite()) throw DomainViolation("k_function: non-finite point");
  const Eigen::MatrixXd& x = sample.points();
  const Eigen::Index n = x.rows();
  double acc = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::VectorXd diff = s - x.row(i).transpose();
    acc += diff.norm() - x.row(i).norm();
  }
  return acc / static_cast<double>(n);
}

TransformValue k_transform(const SampleSet& sample, const EvalPoint& s,
                           double exclude_radius) {
  require_dim(sample, s, "k_transform");
  if (!s.allFinite()) throw DomainViolation("k_transform: non-finite point");
  if (exclude_radius < 0.0) throw DomainViolation("exclude_radius must be >= 0");
  const Eigen::MatrixXd& x = sample.points();
  const Eigen::Index n = x.rows();
  Eigen::VectorXd acc = Eigen::VectorXd::Zero(sample.dim());
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::VectorXd diff = s - x.row(i).transpose();
    const double r = diff.norm();
    if (r > exclude_radius) acc += diff / r;
  }
  TransformValue out;
  out.g = acc / static_cast<double>(n);
  out.norm = out.g.norm();
  return out;
}

double signed_cdf_1d(const SampleSet& sample, double s) {
  if (sample.dim() != 1)
    throw DimensionMismatch("signed_cdf_1d requires d = 1, got d = " +
                            std::to_string(sample.dim()));
  if (!std::isfinite(s)) throw DomainViolation("signed_cdf_1d: non-finite point");
  const Eigen::MatrixXd& x = sample.points();
  const Eigen::Index n = x.rows();
  std::int64_t below = 0, above = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (x(i, 0) < s)
      ++below;
    else if (x(i, 0) > s)
      ++above;
  }
  return static_cast<double>(below - above) / static_cast<double>(n);
}

double mean_inverse_norm_power(const SampleSet& sample, const EvalPoint& s, int k,
                               double exclude_radius) {
  require_dim(sample, s, "mean_inverse_norm_power");
  if (!s.allFinite()) throw DomainViolation("mean_inverse_norm_power: non-finite point");
  if (k < 0) throw DomainViolation("mean_inverse_norm_power: k must be >= 0");
  if (k > sample.dim() - 1)
    throw DomainViolation("mean_inverse_norm_power: k = " + std::to_string(k) +
                          " exceeds d - 1 = " + std::to_string(sample.dim() - 1) +
                          "; the target integral need not exist");
  if (k == 0) return 1.0;  // r^0 = 1 regardless of exclusions
  if (!(exclude_radius > 0.0))
    throw DomainViolation("mean_inverse_norm_power: exclude_radius must be > 0");
  const Eigen::MatrixXd& x = sample.points();
  const Eigen::Index n = x.rows();
  double acc = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double r = (s - x.row(i).transpose()).norm();
    if (r > exclude_radius) {
      const double inv = 1.0 / r;
      double term = inv;
      for (int p = 1; p < k; ++p) term *= inv;
      acc += term;
    }
  }
  return acc / static_cast<double>(n);
}

}  // namespace kq
