#ifndef KQUANT_KTRANSFORM_HPP_
#define KQUANT_KTRANSFORM_HPP_

#include "kquant/types.hpp"

namespace kq {

/// Value of the K-transform at a point: the mean of unit vectors from the
/// sample toward the point. Always satisfies norm <= 1, strictly < 1 except
/// in degenerate collinear limits.
struct TransformValue {
  Eigen::VectorXd g;
  double norm = 0.0;
};

inline constexpr double kDefaultExcludeRadius = 1e-12;

/// Empirical K-function  (1/n) sum_i (||s - x_i|| - ||x_i||).
/// Convex in s; zero at s = 0. Summation is sequential in row order so
/// results are reproducible bit-for-bit.
double k_function(const SampleSet& sample, const EvalPoint& s);

/// Empirical K-transform  (1/n) sum_i (s - x_i)/||s - x_i||.
/// Terms with ||s - x_i|| <= exclude_radius contribute the zero vector (a
/// valid subgradient selection of ||.|| at 0); the divisor stays n.
TransformValue k_transform(const SampleSet& sample, const EvalPoint& s,
                           double exclude_radius = kDefaultExcludeRadius);

/// d = 1 specialization: the signed cdf (#{x_i < s} - #{x_i > s}) / n.
/// Matches the scalar k_transform output bitwise at non-sample points.
double signed_cdf_1d(const SampleSet& sample, double s);

/// (1/n) sum_i ||s - x_i||^-k over points outside the exclusion radius.
/// k = 0 returns exactly 1. Refuses k > d - 1, where the corresponding
/// population integral need not exist.
double mean_inverse_norm_power(const SampleSet& sample, const EvalPoint& s, int k,
                               double exclude_radius = kDefaultExcludeRadius);

}  // namespace kq

#endif  // KQUANT_KTRANSFORM_HPP_
