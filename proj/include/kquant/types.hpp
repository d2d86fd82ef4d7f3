#ifndef KQUANT_TYPES_HPP_
#define KQUANT_TYPES_HPP_

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace kq {

// Error taxonomy. Everything user-facing derives from Error so callers can
// distinguish I/O trouble (exit code 2 in the CLI) from domain trouble
// (exit code 1).
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IOFailure : Error {
  using Error::Error;
};
struct ParseFailure : Error {
  using Error::Error;
};
struct DomainViolation : Error {
  using Error::Error;
};
struct DimensionMismatch : Error {
  using Error::Error;
};
struct DegenerateStep : Error {
  using Error::Error;
};
struct NonFiniteField : Error {
  using Error::Error;
};

/// A point at which fields (K-function, transforms, densities) are evaluated.
using EvalPoint = Eigen::VectorXd;

/// Immutable n-by-d matrix of observations, one row per point.
/// All entries are finite; n >= 1 and d >= 1 are enforced at construction.
class SampleSet {
 public:
  explicit SampleSet(Eigen::MatrixXd points) : points_(std::move(points)) {
    if (points_.rows() < 1 || points_.cols() < 1)
      throw DomainViolation("SampleSet requires n >= 1 and d >= 1");
    if (!points_.allFinite())
      throw DomainViolation("SampleSet entries must be finite");
  }

  Eigen::Index size() const { return points_.rows(); }
  Eigen::Index dim() const { return points_.cols(); }
  const Eigen::MatrixXd& points() const { return points_; }
  Eigen::VectorXd row(Eigen::Index i) const { return points_.row(i).transpose(); }

  /// Copy with row i removed; used for leave-one-out scoring.
  SampleSet without_row(Eigen::Index i) const {
    const Eigen::Index n = size();
    if (i < 0 || i >= n) throw DomainViolation("row index out of range");
    if (n == 1) throw DomainViolation("cannot remove the only row");
    Eigen::MatrixXd out(n - 1, dim());
    out.topRows(i) = points_.topRows(i);
    out.bottomRows(n - 1 - i) = points_.bottomRows(n - 1 - i);
    return SampleSet(std::move(out));
  }

 private:
  Eigen::MatrixXd points_;
};

/// A direction v in the open unit ball, the co-domain of the K-transform.
/// Membership is strict: ||v|| < 1 with no tolerance slack.
class Direction {
 public:
  explicit Direction(Eigen::VectorXd v) : v_(std::move(v)) {
    if (v_.size() < 1) throw DomainViolation("Direction requires d >= 1");
    if (!v_.allFinite()) throw DomainViolation("Direction entries must be finite");
    norm_ = v_.norm();
    if (!(norm_ < 1.0))
      throw DomainViolation("Direction must satisfy ||v|| < 1 strictly (got " +
                            std::to_string(norm_) + ")");
  }

  const Eigen::VectorXd& vec() const { return v_; }
  double norm() const { return norm_; }
  Eigen::Index dim() const { return v_.size(); }

 private:
  Eigen::VectorXd v_;
  double norm_ = 0.0;
};

/// Checked constructor in function form: accepts v iff ||v|| < 1.
inline Direction validate_direction(const Eigen::VectorXd& v) { return Direction(v); }

inline void require_dim(const SampleSet& sample, const EvalPoint& s, const char* where) {
  if (s.size() != sample.dim())
    throw DimensionMismatch(std::string(where) + ": point dimension " +
                            std::to_string(s.size()) + " != sample dimension " +
                            std::to_string(sample.dim()));
}

}  // namespace kq

#endif  // KQUANT_TYPES_HPP_
