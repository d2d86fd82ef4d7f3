#include <doctest.h>

#include <cmath>

#include "kquant/ktransform.hpp"
#include "kquant/rng.hpp"

using namespace kq;

namespace {

SampleSet make_sample(std::initializer_list<std::initializer_list<double>> rows) {
  const Eigen::Index n = static_cast<Eigen::Index>(rows.size());
  const Eigen::Index d = static_cast<Eigen::Index>(rows.begin()->size());
  Eigen::MatrixXd m(n, d);
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    Eigen::Index j = 0;
    for (double v : row) m(i, j++) = v;
    ++i;
  }
  return SampleSet(m);
}

SampleSet gaussian_cloud(Eigen::Index n, Eigen::Index d, std::uint64_t seed) {
  Xoshiro256pp rng(seed);
  Eigen::MatrixXd m(n, d);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < d; ++j) m(i, j) = rng.normal();
  return SampleSet(m);
}

}  // namespace

TEST_CASE("k_function on simple configurations") {
  const SampleSet atom = make_sample({{0.0, 0.0}});
  CHECK(k_function(atom, Eigen::Vector2d(3, 4)) == doctest::Approx(5.0).epsilon(1e-15));

  const SampleSet pair = make_sample({{1.0, 0.0}, {-1.0, 0.0}});
  CHECK(k_function(pair, Eigen::Vector2d(0, 0)) == 0.0);

  // at the origin the definition telescopes to zero for any sample
  const SampleSet cloud = gaussian_cloud(100, 3, 7);
  CHECK(k_function(cloud, Eigen::Vector3d(0, 0, 0)) == 0.0);

  CHECK_THROWS_AS(k_function(pair, Eigen::Vector3d(0, 0, 0)), DimensionMismatch);
}

TEST_CASE("k_transform on simple configurations") {
  const SampleSet atom = make_sample({{1.0, 2.0}});
  const Eigen::Vector2d s(4.0, 6.0);
  const TransformValue tv = k_transform(atom, s);
  CHECK(tv.g(0) == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(tv.g(1) == doctest::Approx(0.8).epsilon(1e-15));

  const SampleSet square = make_sample({{0, 0}, {1, 0}, {0, 1}, {1, 1}});
  const TransformValue center = k_transform(square, Eigen::Vector2d(0.5, 0.5));
  CHECK(center.g(0) == 0.0);
  CHECK(center.g(1) == 0.0);

  // far field: norm approaches 1 from below
  const double far = 1e6 * std::numbers::sqrt2;
  const TransformValue ff = k_transform(square, Eigen::Vector2d(far, far));
  CHECK(ff.norm > 1.0 - 1e-5);
  CHECK(ff.norm < 1.0);
}

TEST_CASE("k_transform ball containment and exclusion behavior") {
  const SampleSet cloud = gaussian_cloud(200, 2, 11);
  Xoshiro256pp rng(12);
  for (int t = 0; t < 50; ++t) {
    const Eigen::Vector2d s(4 * rng.normal(), 4 * rng.normal());
    CHECK(k_transform(cloud, s).norm <= 1.0);
  }
  // evaluation at a sample point: self term contributes zero, divisor stays n
  const SampleSet pair = make_sample({{0.0, 0.0}, {2.0, 0.0}});
  const TransformValue at_atom = k_transform(pair, Eigen::Vector2d(0, 0));
  CHECK(at_atom.g(0) == -0.5);
  CHECK(at_atom.g(1) == 0.0);
}

TEST_CASE("signed cdf in one dimension") {
  const SampleSet s1234 = make_sample({{1.0}, {2.0}, {3.0}, {4.0}});
  CHECK(signed_cdf_1d(s1234, 3.5) == 0.5);
  CHECK(signed_cdf_1d(s1234, 0.0) == -1.0);
  const SampleSet sym = make_sample({{-1.0}, {1.0}});
  CHECK(signed_cdf_1d(sym, 0.0) == 0.0);
  CHECK_THROWS_AS(signed_cdf_1d(make_sample({{1.0, 2.0}}), 0.0), DimensionMismatch);
}

TEST_CASE("signed cdf equals the scalar k_transform bitwise off the sample") {
  const SampleSet cloud = gaussian_cloud(501, 1, 13);
  Xoshiro256pp rng(14);
  for (int t = 0; t < 500; ++t) {
    const double s = 6.0 * (rng.uniform01() - 0.5);
    bool on_sample = false;
    for (Eigen::Index i = 0; i < cloud.size(); ++i)
      if (cloud.points()(i, 0) == s) on_sample = true;
    if (on_sample) continue;
    Eigen::VectorXd sp(1);
    sp << s;
    CHECK(k_transform(cloud, sp).g(0) == signed_cdf_1d(cloud, s));
  }
}

TEST_CASE("gradient consistency: central differences match the transform") {
  const SampleSet cloud = gaussian_cloud(400, 2, 21);
  Xoshiro256pp rng(22);
  const double h = 1e-4;
  int checked = 0;
  while (checked < 40) {
    const Eigen::Vector2d s(3 * rng.normal(), 3 * rng.normal());
    double min_dist = 1e9;
    for (Eigen::Index i = 0; i < cloud.size(); ++i)
      min_dist = std::min(min_dist, (s - cloud.row(i).head<2>()).norm());
    if (min_dist < 0.1) continue;
    ++checked;
    const TransformValue tv = k_transform(cloud, s);
    for (int c = 0; c < 2; ++c) {
      Eigen::Vector2d sp = s, sm = s;
      sp(c) += h;
      sm(c) -= h;
      const double fd = (k_function(cloud, sp) - k_function(cloud, sm)) / (2 * h);
      CHECK(std::abs(fd - tv.g(c)) <= 1e-5);
    }
  }
}

TEST_CASE("convexity of the K-function along random chords") {
  const SampleSet cloud = gaussian_cloud(150, 2, 31);
  Xoshiro256pp rng(32);
  for (int t = 0; t < 200; ++t) {
    const Eigen::Vector2d a(5 * rng.normal(), 5 * rng.normal());
    const Eigen::Vector2d b(5 * rng.normal(), 5 * rng.normal());
    const double lam = rng.uniform01();
    const Eigen::Vector2d mid = lam * a + (1 - lam) * b;
    CHECK(k_function(cloud, mid) <=
          lam * k_function(cloud, a) + (1 - lam) * k_function(cloud, b) + 1e-12);
  }
}

TEST_CASE("translation equivariance is exact when the shift is exact") {
  // snap data to a dyadic grid and shift by integers so x + c is exact
  Xoshiro256pp rng(41);
  Eigen::MatrixXd m(64, 2);
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < 2; ++j)
      m(i, j) = std::round(rng.normal() * 1048576.0) / 1048576.0;
  const SampleSet cloud(m);
  const Eigen::Vector2d c(17.0, -4.0);
  Eigen::MatrixXd shifted = m;
  shifted.rowwise() += c.transpose();
  const SampleSet cloud_shifted(shifted);

  for (int t = 0; t < 25; ++t) {
    Eigen::Vector2d s(std::round(rng.normal() * 1048576.0) / 1048576.0,
                      std::round(rng.normal() * 1048576.0) / 1048576.0);
    const TransformValue base = k_transform(cloud, s);
    const TransformValue moved = k_transform(cloud_shifted, Eigen::Vector2d(s + c));
    CHECK(base.g(0) == moved.g(0));
    CHECK(base.g(1) == moved.g(1));
  }
}

TEST_CASE("rotation equivariance within 1e-12") {
  const SampleSet cloud = gaussian_cloud(120, 2, 51);
  const double theta = 0.83;
  Eigen::Matrix2d rot;
  rot << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
  const SampleSet rotated(cloud.points() * rot.transpose());
  Xoshiro256pp rng(52);
  for (int t = 0; t < 25; ++t) {
    const Eigen::Vector2d s(3 * rng.normal(), 3 * rng.normal());
    const Eigen::Vector2d lhs = k_transform(rotated, Eigen::Vector2d(rot * s)).g;
    const Eigen::Vector2d rhs = rot * k_transform(cloud, s).g;
    CHECK((lhs - rhs).norm() <= 1e-12);
  }
}

TEST_CASE("mean_inverse_norm_power basics and the k = 0 convention") {
  const SampleSet atom3 = make_sample({{0.0, 0.0, 0.0}});
  CHECK(mean_inverse_norm_power(atom3, Eigen::Vector3d(1, 0, 0), 1) == 1.0);

  const SampleSet two = make_sample({{2.0, 0.0, 0.0}, {0.0, 2.0, 0.0}});
  CHECK(mean_inverse_norm_power(two, Eigen::Vector3d(0, 0, 0), 1) == 0.5);

  // k = 0 returns exactly 1 even when a point is excluded
  CHECK(mean_inverse_norm_power(two, Eigen::Vector3d(2, 0, 0), 0) == 1.0);

  CHECK_THROWS_AS(mean_inverse_norm_power(two, Eigen::Vector3d(0, 0, 0), 3), DomainViolation);
  const SampleSet flat = make_sample({{0.0, 0.0}});
  CHECK_THROWS_AS(mean_inverse_norm_power(flat, Eigen::Vector2d(1, 0), 2), DomainViolation);
}
