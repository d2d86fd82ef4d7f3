#include "kquant/distributions.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Cholesky>

#include "kquant/rng.hpp"

namespace kq {

namespace {

constexpr double kWeightSumTol = 1e-12;

Eigen::MatrixXd lower_cholesky(const Eigen::MatrixXd& cov) {
  Eigen::LLT<Eigen::MatrixXd> llt(cov);
  if (llt.info() != Eigen::Success)
    throw DomainViolation("covariance is not positive definite");
  return llt.matrixL();
}

}  // namespace

void MixtureModel::validate() const {
  const std::size_t k = weights.size();
  if (k == 0 || means.size() != k || covariances.size() != k)
    throw DomainViolation("mixture needs matching weights/means/covariances");
  const Eigen::Index d = means.front().size();
  if (d < 1) throw DomainViolation("mixture dimension must be >= 1");
  double wsum = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    if (!(weights[i] > 0.0)) throw DomainViolation("mixture weights must be > 0");
    wsum += weights[i];
    if (means[i].size() != d) throw DomainViolation("mixture means of unequal dimension");
    if (covariances[i].rows() != d || covariances[i].cols() != d)
      throw DomainViolation("covariance shape mismatch");
    if (!covariances[i].isApprox(covariances[i].transpose(), 1e-12))
      throw DomainViolation("covariance must be symmetric");
    lower_cholesky(covariances[i]);  // SPD check
  }
  if (std::abs(wsum - 1.0) > kWeightSumTol)
    throw DomainViolation("mixture weights must sum to 1");
}

MixtureModel single_gaussian(Eigen::VectorXd mean, Eigen::MatrixXd covariance) {
  MixtureModel m;
  m.weights = {1.0};
  m.means = {std::move(mean)};
  m.covariances = {std::move(covariance)};
  m.validate();
  return m;
}

MixtureModel banana_model() {
  MixtureModel m;
  m.weights = {3.0 / 8.0, 3.0 / 8.0, 1.0 / 4.0};
  m.means = {Eigen::Vector2d(-3.0, 0.0), Eigen::Vector2d(3.0, 0.0),
             Eigen::Vector2d(0.0, -2.5)};
  Eigen::Matrix2d s1, s2, s3;
  s1 << 5.0, -4.0, -4.0, 5.0;
  s2 << 5.0, 4.0, 4.0, 5.0;
  s3 << 4.0, 0.0, 0.0, 1.0;
  m.covariances = {s1, s2, s3};
  m.validate();
  return m;
}

SampleSet sample_mixture(const MixtureModel& model, Eigen::Index n, std::uint64_t seed) {
  model.validate();
  if (n < 1) throw DomainViolation("sample size must be >= 1");
  const Eigen::Index d = model.dim();
  const Eigen::Index k = model.components();

  std::vector<Eigen::MatrixXd> chol;
  chol.reserve(static_cast<std::size_t>(k));
  for (const auto& cov : model.covariances) chol.push_back(lower_cholesky(cov));

  Xoshiro256pp selector = Xoshiro256pp::substream(seed, 0);
  std::vector<Xoshiro256pp> comp_stream;
  comp_stream.reserve(static_cast<std::size_t>(k));
  for (Eigen::Index c = 0; c < k; ++c)
    comp_stream.push_back(Xoshiro256pp::substream(seed, static_cast<std::uint64_t>(c) + 1));

  Eigen::MatrixXd pts(n, d);
  Eigen::VectorXd z(d);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double u = selector.uniform01();
    Eigen::Index c = 0;
    double acc = 0.0;
    for (; c < k - 1; ++c) {
      acc += model.weights[static_cast<std::size_t>(c)];
      if (u < acc) break;
    }
    auto& stream = comp_stream[static_cast<std::size_t>(c)];
    for (Eigen::Index j = 0; j < d; ++j) z(j) = stream.normal();
    pts.row(i) = (model.means[static_cast<std::size_t>(c)] +
                  chol[static_cast<std::size_t>(c)] * z)
                     .transpose();
  }
  return SampleSet(std::move(pts));
}

double density(const MixtureModel& model, const EvalPoint& s) {
  model.validate();
  const Eigen::Index d = model.dim();
  if (s.size() != d) throw DimensionMismatch("density: point dimension mismatch");
  if (!s.allFinite()) throw DomainViolation("density: non-finite point");
  const double log2pi = std::log(2.0 * std::numbers::pi);
  double total = 0.0;
  for (Eigen::Index c = 0; c < model.components(); ++c) {
    const Eigen::MatrixXd L = lower_cholesky(model.covariances[static_cast<std::size_t>(c)]);
    const Eigen::VectorXd y =
        L.triangularView<Eigen::Lower>().solve(s - model.means[static_cast<std::size_t>(c)]);
    const double log_det_half = L.diagonal().array().log().sum();
    const double log_pdf =
        -0.5 * (static_cast<double>(d) * log2pi + y.squaredNorm()) - log_det_half;
    total += model.weights[static_cast<std::size_t>(c)] * std::exp(log_pdf);
  }
  return total;
}

SampleSet figure1_gaussian(Eigen::Index n, std::uint64_t seed) {
  Eigen::Matrix2d cov;
  cov << 1.0, 0.75, 0.75, 1.0;
  return sample_mixture(single_gaussian(Eigen::Vector2d::Zero(), cov), n, seed);
}

SampleSet spiral_sample(Eigen::Index n, std::uint64_t seed) {
  if (n < 1) throw DomainViolation("sample size must be >= 1");
  constexpr double kSigma = 0.15;
  constexpr double kTMax = 3.0 * std::numbers::pi;
  Xoshiro256pp angle_stream = Xoshiro256pp::substream(seed, 0);
  Xoshiro256pp jitter_stream = Xoshiro256pp::substream(seed, 1);
  Eigen::MatrixXd pts(n, 2);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double t = kTMax * angle_stream.uniform01();
    const double radius = 0.5 + 2.0 * t;
    pts(i, 0) = radius * std::cos(t) + kSigma * jitter_stream.normal();
    pts(i, 1) = radius * std::sin(t) + kSigma * jitter_stream.normal();
  }
  return SampleSet(std::move(pts));
}

SampleSet square_sample(Eigen::Index n, std::uint64_t seed) {
  if (n < 1) throw DomainViolation("sample size must be >= 1");
  constexpr double kSigma = 0.08;
  constexpr double kInnerHalfWidth = 1.0;
  constexpr double kOuterHalfWidth = 2.5;
  constexpr double kInnerShare = 0.4;
  Xoshiro256pp place = Xoshiro256pp::substream(seed, 0);
  Xoshiro256pp jitter = Xoshiro256pp::substream(seed, 1);
  Eigen::MatrixXd pts(n, 2);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double a = place.uniform01() < kInnerShare ? kInnerHalfWidth : kOuterHalfWidth;
    const int side = static_cast<int>(4.0 * place.uniform01()) % 4;
    const double pos = a * (2.0 * place.uniform01() - 1.0);
    double x = 0.0, y = 0.0;
    switch (side) {
      case 0: x = pos; y = -a; break;
      case 1: x = a; y = pos; break;
      case 2: x = pos; y = a; break;
      default: x = -a; y = pos; break;
    }
    pts(i, 0) = x + kSigma * jitter.normal();
    pts(i, 1) = y + kSigma * jitter.normal();
  }
  return SampleSet(std::move(pts));
}

}  // namespace kq
