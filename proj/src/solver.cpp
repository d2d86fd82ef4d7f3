#include "kquant/solver.hpp"

#include <cmath>
#include <limits>

#include "kquant/rng.hpp"

namespace kq {

namespace {

void require_direction_dim(const SampleSet& sample, const Direction& v) {
  if (v.dim() != sample.dim())
    throw DimensionMismatch("direction dimension " + std::to_string(v.dim()) +
                            " != sample dimension " + std::to_string(sample.dim()));
}

Eigen::VectorXd initial_point(const SampleSet& sample, const SolverConfig& cfg) {
  switch (cfg.init) {
    case SolverConfig::Init::Mean:
      return sample.points().colwise().mean().transpose();
    case SolverConfig::Init::Given:
      if (cfg.init_point.size() != sample.dim())
        throw DimensionMismatch("init point dimension mismatch");
      if (!cfg.init_point.allFinite())
        throw DomainViolation("init point must be finite");
      return cfg.init_point;
    case SolverConfig::Init::SeededRandom: {
      Xoshiro256pp stream = Xoshiro256pp::substream(cfg.seed, 0);
      const Eigen::VectorXd lo = sample.points().colwise().minCoeff().transpose();
      const Eigen::VectorXd hi = sample.points().colwise().maxCoeff().transpose();
      Eigen::VectorXd s(sample.dim());
      for (Eigen::Index j = 0; j < s.size(); ++j)
        s(j) = lo(j) + stream.uniform01() * (hi(j) - lo(j));
      return s;
    }
  }
  throw DomainViolation("unknown init mode");
}

struct StepResult {
  Eigen::VectorXd next;
  Eigen::Index excluded = 0;          // points within exclude_radius of s_prev
  Eigen::Index nearest_excluded = -1; // row index of the closest such point
};

// One Step-3 update; excluded == n means all mass sits at s_prev.
StepResult raw_step(const SampleSet& sample, const Direction& v,
                    const Eigen::VectorXd& s_prev, double exclude_radius) {
  const Eigen::MatrixXd& x = sample.points();
  const Eigen::Index n = x.rows();
  Eigen::VectorXd num = Eigen::VectorXd::Zero(sample.dim());
  double den = 0.0;
  StepResult res;
  double nearest = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::VectorXd diff = s_prev - x.row(i).transpose();
    const double r = diff.norm();
    if (r <= exclude_radius) {
      ++res.excluded;
      if (r < nearest) {
        nearest = r;
        res.nearest_excluded = i;
      }
      continue;
    }
    num += x.row(i).transpose() / r;
    den += 1.0 / r;
  }
  if (res.excluded == n) return res;
  const double inv_n = 1.0 / static_cast<double>(n);
  res.next = (v.vec() + num * inv_n) / (den * inv_n);
  return res;
}

// Subgradient optimality at atom x_a: v must lie within mass/n of the
// transform of the remaining points. `mass` counts coincident rows.
bool atom_is_optimal(const SampleSet& sample, const Direction& v, Eigen::Index a,
                     double exclude_radius) {
  const Eigen::VectorXd atom = sample.row(a);
  const Eigen::MatrixXd& x = sample.points();
  const Eigen::Index n = x.rows();
  Eigen::VectorXd acc = Eigen::VectorXd::Zero(sample.dim());
  Eigen::Index mass = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::VectorXd diff = atom - x.row(i).transpose();
    const double r = diff.norm();
    if (r <= exclude_radius)
      ++mass;
    else
      acc += diff / r;
  }
  const double residual = (acc / static_cast<double>(n) - v.vec()).norm();
  return residual <= static_cast<double>(mass) / static_cast<double>(n);
}

}  // namespace

double primal_objective(const SampleSet& sample, const Direction& v, const EvalPoint& s) {
  require_dim(sample, s, "primal_objective");
  require_direction_dim(sample, v);
  if (!s.allFinite()) throw DomainViolation("primal_objective: non-finite point");
  const Eigen::MatrixXd& x = sample.points();
  const Eigen::Index n = x.rows();
  double acc = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::VectorXd diff = x.row(i).transpose() - s;
    acc += diff.norm() + v.vec().dot(diff);
  }
  return acc / static_cast<double>(n);
}

EvalPoint mm_step(const SampleSet& sample, const Direction& v, const EvalPoint& s_prev,
                  double exclude_radius) {
  require_dim(sample, s_prev, "mm_step");
  require_direction_dim(sample, v);
  if (!s_prev.allFinite()) throw DomainViolation("mm_step: non-finite point");
  StepResult res = raw_step(sample, v, s_prev, exclude_radius);
  if (res.excluded == sample.size())
    throw DegenerateStep("every sample point lies within the exclusion radius of s_prev");
  return res.next;
}

SolverReport solve_quantile(const SampleSet& sample, const Direction& v,
                            const SolverConfig& cfg) {
  require_direction_dim(sample, v);
  if (!(cfg.tol > 0.0)) throw DomainViolation("tol must be > 0");
  if (cfg.max_iter < 1) throw DomainViolation("max_iter must be >= 1");

  SolverReport report;
  Eigen::VectorXd s = initial_point(sample, cfg);
  report.objective_trace.push_back(primal_objective(sample, v, s));

  for (int iter = 1; iter <= cfg.max_iter; ++iter) {
    StepResult res = raw_step(sample, v, s, cfg.exclude_radius);

    if (res.excluded == sample.size()) {
      // s itself carries all the sample mass; it is the quantile for any v.
      report.converged = true;
      report.final_step = 0.0;
      break;
    }

    if (res.excluded > 0) {
      const Eigen::Index a = res.nearest_excluded;
      const Eigen::VectorXd atom = sample.row(a);
      if ((res.next - atom).norm() <= cfg.exclude_radius &&
          atom_is_optimal(sample, v, a, cfg.exclude_radius)) {
        report.final_step = (atom - s).norm();
        s = atom;
        report.iterations = iter;
        report.objective_trace.push_back(primal_objective(sample, v, s));
        report.converged = true;
        break;
      }
    }

    report.final_step = (res.next - s).norm();
    s = res.next;
    report.iterations = iter;
    report.objective_trace.push_back(primal_objective(sample, v, s));
    if (report.final_step <= cfg.tol) {
      report.converged = true;
      break;
    }
  }

  report.quantile = std::move(s);
  return report;
}

}  // namespace kq
