#include <doctest.h>

#include <cmath>
#include <numbers>

#include "kquant/distributions.hpp"
#include "kquant/rng.hpp"

using namespace kq;

TEST_CASE("rng streams are deterministic and distinct") {
  Xoshiro256pp a = Xoshiro256pp::substream(42, 0);
  Xoshiro256pp b = Xoshiro256pp::substream(42, 0);
  Xoshiro256pp c = Xoshiro256pp::substream(42, 1);
  bool all_equal = true, any_equal_cross = false;
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next(), y = b.next(), z = c.next();
    all_equal = all_equal && (x == y);
    any_equal_cross = any_equal_cross || (x == z);
  }
  CHECK(all_equal);
  CHECK_FALSE(any_equal_cross);
}

TEST_CASE("uniform01 lies in [0,1); normals have sane moments") {
  Xoshiro256pp rng(7);
  double sum = 0, sum2 = 0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform01();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    const double z = rng.normal();
    sum += z;
    sum2 += z * z;
  }
  CHECK(std::abs(sum / n) < 3.0 / std::sqrt(static_cast<double>(n)));
  CHECK(std::abs(sum2 / n - 1.0) < 3.0 * std::numbers::sqrt2 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("MixtureModel validation") {
  MixtureModel bad = banana_model();
  bad.weights[0] = 0.5;  // no longer sums to 1
  CHECK_THROWS_AS(bad.validate(), DomainViolation);

  bad = banana_model();
  bad.covariances[0] << 1.0, 2.0, 2.0, 1.0;  // indefinite
  CHECK_THROWS_AS(bad.validate(), DomainViolation);

  bad = banana_model();
  bad.means.pop_back();
  CHECK_THROWS_AS(bad.validate(), DomainViolation);

  CHECK_NOTHROW(banana_model().validate());
  CHECK_THROWS_AS(sample_mixture(banana_model(), 0, 1), DomainViolation);
}

TEST_CASE("banana model carries the documented parameters") {
  const MixtureModel m = banana_model();
  CHECK(m.weights == std::vector<double>{0.375, 0.375, 0.25});
  CHECK(m.means[0] == Eigen::Vector2d(-3, 0));
  CHECK(m.means[1] == Eigen::Vector2d(3, 0));
  CHECK(m.means[2] == Eigen::Vector2d(0, -2.5));
  CHECK(m.covariances[0](0, 1) == -4.0);
  CHECK(m.covariances[1](0, 1) == 4.0);
  CHECK(m.covariances[2](0, 0) == 4.0);
  CHECK(m.covariances[2](1, 1) == 1.0);
}

TEST_CASE("banana sample matches the analytic mean within 3 standard errors") {
  const SampleSet s = sample_mixture(banana_model(), 20000, 3);
  const Eigen::Vector2d mean = s.points().colwise().mean();
  // per-coordinate variances of the mixture: 11.5 and ~5.56
  const double se_x = std::sqrt(11.5 / 20000.0);
  const double se_y = std::sqrt(5.5625 / 20000.0);
  CHECK(std::abs(mean(0) - 0.0) < 3 * se_x);
  CHECK(std::abs(mean(1) - (-0.625)) < 3 * se_y);
}

TEST_CASE("single-component sampling reproduces the covariance") {
  const MixtureModel m = single_gaussian(Eigen::Vector2d::Zero(), Eigen::Matrix2d::Identity());
  const SampleSet s = sample_mixture(m, 100000, 5);
  const Eigen::MatrixXd centered = s.points().rowwise() - s.points().colwise().mean();
  const Eigen::Matrix2d cov = centered.transpose() * centered / (s.size() - 1.0);
  const double se = 3.0 * std::sqrt(2.0 / 100000.0);
  CHECK(std::abs(cov(0, 0) - 1.0) < se);
  CHECK(std::abs(cov(1, 1) - 1.0) < se);
  CHECK(std::abs(cov(0, 1)) < se);
}

TEST_CASE("same seed gives bit-identical samples; different seeds differ") {
  const SampleSet a = sample_mixture(banana_model(), 500, 11);
  const SampleSet b = sample_mixture(banana_model(), 500, 11);
  CHECK(a.points() == b.points());
  const SampleSet c = sample_mixture(banana_model(), 500, 12);
  CHECK(a.points() != c.points());
}

TEST_CASE("density values against closed forms") {
  const MixtureModel std2 =
      single_gaussian(Eigen::Vector2d::Zero(), Eigen::Matrix2d::Identity());
  CHECK(density(std2, Eigen::Vector2d(0, 0)) ==
        doctest::Approx(1.0 / (2 * std::numbers::pi)).epsilon(1e-12));

  const MixtureModel std3 =
      single_gaussian(Eigen::Vector3d::Zero(), Eigen::Matrix3d::Identity());
  CHECK(density(std3, Eigen::Vector3d(0, 0, 0)) ==
        doctest::Approx(std::pow(2 * std::numbers::pi, -1.5)).epsilon(1e-12));

  // equal two-sided mixture at the midpoint equals one component at distance
  MixtureModel twin;
  twin.weights = {0.5, 0.5};
  twin.means = {Eigen::Vector2d(1.5, 0), Eigen::Vector2d(-1.5, 0)};
  twin.covariances = {Eigen::Matrix2d::Identity(), Eigen::Matrix2d::Identity()};
  const double at_zero = density(twin, Eigen::Vector2d(0, 0));
  const double one_side = density(std2, Eigen::Vector2d(1.5, 0));
  CHECK(at_zero == doctest::Approx(one_side).epsilon(1e-12));

  CHECK_THROWS_AS(density(std2, Eigen::Vector3d(0, 0, 0)), DimensionMismatch);
}

TEST_CASE("density self-consistency: E[rho(X)] matches quadrature of rho^2") {
  // for N(0, I2) the integral of rho^2 is 1/(4*pi) in closed form
  const MixtureModel std2 =
      single_gaussian(Eigen::Vector2d::Zero(), Eigen::Matrix2d::Identity());
  const SampleSet s = sample_mixture(std2, 100000, 17);
  double mc = 0.0;
  for (Eigen::Index i = 0; i < s.size(); ++i) mc += density(std2, s.row(i));
  mc /= static_cast<double>(s.size());

  // Simpson quadrature of rho^2 over [-8, 8]^2
  const int grid = 256;
  const double lo = -8.0, hi = 8.0, step = (hi - lo) / grid;
  double quad = 0.0;
  for (int i = 0; i <= grid; ++i)
    for (int j = 0; j <= grid; ++j) {
      const double wx = (i == 0 || i == grid) ? 1 : (i % 2 ? 4 : 2);
      const double wy = (j == 0 || j == grid) ? 1 : (j % 2 ? 4 : 2);
      const double rho = density(std2, Eigen::Vector2d(lo + i * step, lo + j * step));
      quad += wx * wy * rho * rho;
    }
  quad *= step * step / 9.0;

  const double analytic = 1.0 / (4 * std::numbers::pi);
  CHECK(std::abs(quad - analytic) / analytic < 1e-6);
  CHECK(std::abs(mc - quad) / quad < 0.01);
}

TEST_CASE("figure 1 sample: correlation within 3 standard errors of 0.75") {
  const SampleSet s = figure1_gaussian(3000, 23);
  const Eigen::MatrixXd centered = s.points().rowwise() - s.points().colwise().mean();
  const Eigen::Matrix2d cov = centered.transpose() * centered / (s.size() - 1.0);
  const double corr = cov(0, 1) / std::sqrt(cov(0, 0) * cov(1, 1));
  const double se = (1 - 0.75 * 0.75) / std::sqrt(3000.0);
  CHECK(std::abs(corr - 0.75) < 3 * se);

  CHECK(figure1_gaussian(2, 1).size() == 2);
  CHECK_THROWS_AS(figure1_gaussian(0, 1), DomainViolation);
}

TEST_CASE("spiral sample: radii inside the construction bound") {
  const SampleSet s = spiral_sample(kSpiralN, 29);
  CHECK(s.size() == kSpiralN);
  const double sigma = 0.15;
  const double lo = 0.5 - 5 * sigma, hi = 0.5 + 6 * std::numbers::pi + 5 * sigma;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    const double radius = s.row(i).norm();
    CHECK(radius >= lo);
    CHECK(radius <= hi);
  }
  CHECK(spiral_sample(kSpiralN, 29).points() == s.points());
  CHECK(spiral_sample(1, 30).size() == 1);
}

TEST_CASE("square sample: hollow center, centered mean, deterministic") {
  const SampleSet s = square_sample(kSquareN, 31);
  CHECK(s.size() == kSquareN);
  const double sigma = 0.08;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    CHECK(s.row(i).norm() > 0.5 - 5 * sigma);
  const Eigen::Vector2d mean = s.points().colwise().mean();
  for (int c = 0; c < 2; ++c) {
    const double sd = std::sqrt(
        (s.points().col(c).array() - mean(c)).square().sum() / (s.size() - 1.0));
    CHECK(std::abs(mean(c)) < 3 * sd / std::sqrt(static_cast<double>(s.size())));
  }
  CHECK(square_sample(kSquareN, 31).points() == s.points());
}
