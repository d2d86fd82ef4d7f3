#ifndef KQUANT_DISTRIBUTIONS_HPP_
#define KQUANT_DISTRIBUTIONS_HPP_

#include <cstdint>
#include <vector>

#include "kquant/types.hpp"

namespace kq {

/// Gaussian mixture: weights sum to 1, each covariance symmetric positive
/// definite. Components are sampled through per-component substreams so the
/// draws for component k do not depend on how often other components fire.
struct MixtureModel {
  std::vector<double> weights;
  std::vector<Eigen::VectorXd> means;
  std::vector<Eigen::MatrixXd> covariances;

  Eigen::Index components() const { return static_cast<Eigen::Index>(weights.size()); }
  Eigen::Index dim() const { return means.empty() ? 0 : means.front().size(); }

  /// Throws DomainViolation unless weights/means/covariances are consistent.
  void validate() const;
};

MixtureModel single_gaussian(Eigen::VectorXd mean, Eigen::MatrixXd covariance);

/// The three-component banana-shaped mixture:
/// weights (3/8, 3/8, 1/4), means (-3,0), (3,0), (0,-5/2),
/// covariances [[5,-4],[-4,5]], [[5,4],[4,5]], [[4,0],[0,1]].
MixtureModel banana_model();

/// n i.i.d. draws; component choice consumes one uniform from stream 0,
/// component k draws d normals from stream k+1 (lower Cholesky convention).
SampleSet sample_mixture(const MixtureModel& model, Eigen::Index n, std::uint64_t seed);

/// Mixture density at s.
double density(const MixtureModel& model, const EvalPoint& s);

/// Bivariate normal, zero mean, unit variances, correlation 0.75.
SampleSet figure1_gaussian(Eigen::Index n, std::uint64_t seed);

/// Archimedean spiral: radius(t) = 0.5 + 2t, angle t ~ Uniform[0, 3*pi],
/// isotropic Gaussian jitter sigma = 0.15. Stream 0 drives t, stream 1 jitter.
SampleSet spiral_sample(Eigen::Index n, std::uint64_t seed);

/// Perimeters of two concentric axis-aligned squares, half-widths 1 and 2.5,
/// picked with probability 0.4/0.6, jitter sigma = 0.08. Stream 0 drives
/// placement (square, side, position), stream 1 jitter.
SampleSet square_sample(Eigen::Index n, std::uint64_t seed);

inline constexpr Eigen::Index kFigure1N = 3000;
inline constexpr Eigen::Index kBananaN = 20000;
inline constexpr Eigen::Index kSpiralN = 2259;
inline constexpr Eigen::Index kSquareN = 1242;

// Default seeds for the figure presets; golden fixtures assume them.
inline constexpr std::uint64_t kFigure1Seed = 1;
inline constexpr std::uint64_t kBananaSeed = 1;
inline constexpr std::uint64_t kSpiralSeed = 1;
inline constexpr std::uint64_t kSquareSeed = 1;

}  // namespace kq

#endif  // KQUANT_DISTRIBUTIONS_HPP_
