#ifndef KQUANT_VERIFY_HPP_
#define KQUANT_VERIFY_HPP_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "kquant/distributions.hpp"
#include "kquant/types.hpp"

namespace kq {

using ScalarField = std::function<double(const EvalPoint&)>;

/// Central-difference Laplacian: sum over axes of
/// [f(s + h e_i) - 2 f(s) + f(s - h e_i)] / h^2. Throws NonFiniteField when a
/// stencil evaluation is not finite.
double numeric_laplacian(const ScalarField& field, const EvalPoint& s, double h);

/// One Richardson step on the h^2 error term: (4 L(h/2) - L(h)) / 3.
double richardson_laplacian(const ScalarField& field, const EvalPoint& s, double h);

/// Signed product (-1)^{j+1} (d-1)(d-3)...(d-2j+1) relating the j-th
/// Laplacian of the K-function to E[1/||s-X||^{2j-1}]. Requires odd d >= 3
/// and 1 <= j <= (d-1)/2.
double polylap_coefficient(int d, int j);

/// |alpha| in Delta^{N+1} f = alpha * density:
/// (d-1)(d-3)...(2) * d (d-2) pi^{d/2} / Gamma(d/2 + 1); 8*pi for d = 3.
double corollary_alpha_magnitude(int d);

/// Sign of alpha as given by the closed formula, (-1)^{N-1} with N=(d-1)/2.
int corollary_alpha_formula_sign(int d);

struct VerifySettings {
  double h = 0.05;
  Eigen::Index n = 100000;
  std::uint64_t seed = 1;
  double tolerance = 0.05;
  // relative errors use max(|rhs|, scale_floor) in the denominator so
  // near-zero rhs values are judged absolutely (|lhs-rhs| <= tol*floor)
  double scale_floor = 0.02;
};

/// Outcome of one identity check across a list of evaluation points.
/// passed <=> every relative error is within the tolerance. For the
/// corollary, relative errors compare |lhs| against |alpha|*density and the
/// lhs sign is recorded separately rather than judged.
struct VerificationReport {
  std::string identity;
  std::vector<EvalPoint> evaluation_points;
  std::vector<double> lhs;
  std::vector<double> rhs;
  std::vector<double> relative_errors;
  bool passed = false;
  VerifySettings settings;
  std::vector<int> observed_signs;  // corollary only
  int formula_sign = 0;             // corollary only

  nlohmann::json to_json() const;
};

/// d = 1: second derivative of the Monte-Carlo K-function against twice the
/// model density. One sample (common random numbers) backs every stencil
/// evaluation.
VerificationReport verify_lemma4(const MixtureModel& model, const std::vector<double>& points,
                                 Eigen::Index n, std::uint64_t seed, double h);

/// Odd d >= 3: j-fold iterated numeric Laplacian of the Monte-Carlo
/// K-function against polylap_coefficient(d, j) * mean 1/||s-X||^{2j-1},
/// both sides on the same sample. Tolerance 5% for j = 1, 10% for j >= 2.
VerificationReport verify_theorem(const MixtureModel& model, int j,
                                  const std::vector<EvalPoint>& points, Eigen::Index n,
                                  std::uint64_t seed, double h);

/// d = 3: Laplacian of the smooth field 2 * mean(1/||s-X||) — the Theorem's
/// j = 1 expectation form — against |alpha| * density. Magnitudes are
/// compared; the observed sign is recorded next to the formula sign.
VerificationReport verify_corollary(const MixtureModel& model,
                                    const std::vector<EvalPoint>& points, Eigen::Index n,
                                    std::uint64_t seed, double h);

}  // namespace kq

#endif  // KQUANT_VERIFY_HPP_
