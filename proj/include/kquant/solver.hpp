#ifndef KQUANT_SOLVER_HPP_
#define KQUANT_SOLVER_HPP_

#include <cstdint>
#include <vector>

#include "kquant/ktransform.hpp"
#include "kquant/types.hpp"

namespace kq {

/// Controls for the MM iteration that inverts the K-transform.
///
/// The iteration stops once the displacement ||s_k - s_{k-1}|| drops to tol
/// (the objective flattens near non-smooth minima, so displacement is the
/// more reliable signal). Initialization defaults to the coordinate-wise
/// mean for determinism; SeededRandom draws the start uniformly from the
/// sample's bounding box.
struct SolverConfig {
  enum class Init { Mean, Given, SeededRandom };

  double tol = 1e-10;
  int max_iter = 10000;
  Init init = Init::Mean;
  Eigen::VectorXd init_point;  // used when init == Given
  std::uint64_t seed = 0;      // used when init == SeededRandom
  double exclude_radius = kDefaultExcludeRadius;

  static SolverConfig mean_init() { return SolverConfig{}; }
  static SolverConfig given_init(Eigen::VectorXd s0) {
    SolverConfig cfg;
    cfg.init = Init::Given;
    cfg.init_point = std::move(s0);
    return cfg;
  }
  static SolverConfig seeded_random_init(std::uint64_t seed) {
    SolverConfig cfg;
    cfg.init = Init::SeededRandom;
    cfg.seed = seed;
    return cfg;
  }
};

/// Outcome of solve_quantile. objective_trace holds the primal objective at
/// the initial point and after every accepted step; it is non-increasing up
/// to 1e-12 per step (the MM descent guarantee).
struct SolverReport {
  Eigen::VectorXd quantile;
  int iterations = 0;
  double final_step = 0.0;
  std::vector<double> objective_trace;
  bool converged = false;
};

/// (1/n) sum_i { ||x_i - s|| + <v, x_i - s> }. The geometric quantile is the
/// argmin over s; terms constant in s are dropped.
double primal_objective(const SampleSet& sample, const Direction& v, const EvalPoint& s);

/// One MM update:
///   s_k = (v + (1/n) sum' x_i/r_i) / ((1/n) sum' 1/r_i),   r_i = ||s_prev - x_i||,
/// where sum' drops points with r_i <= exclude_radius (Weiszfeld-style
/// exclusion; the divisor stays n). Throws DegenerateStep if every point is
/// excluded, i.e. all sample mass sits at s_prev.
EvalPoint mm_step(const SampleSet& sample, const Direction& v, const EvalPoint& s_prev,
                  double exclude_radius = kDefaultExcludeRadius);

/// Inverts the K-transform: finds s with k_transform(sample, s) ~ v, the
/// empirical geometric quantile at direction v. Deterministic given cfg.
/// Returns converged = false (never throws) when max_iter is exhausted.
SolverReport solve_quantile(const SampleSet& sample, const Direction& v,
                            const SolverConfig& cfg = SolverConfig{});

}  // namespace kq

#endif  // KQUANT_SOLVER_HPP_
