#include "kquant/verify.hpp"

#include <cmath>
#include <numbers>

#include "kquant/ktransform.hpp"

namespace kq {

double numeric_laplacian(const ScalarField& field, const EvalPoint& s, double h) {
  if (!(h > 0.0)) throw DomainViolation("numeric_laplacian: h must be > 0");
  if (!s.allFinite()) throw DomainViolation("numeric_laplacian: non-finite point");
  const Eigen::Index d = s.size();
  const double center = field(s);
  if (!std::isfinite(center)) throw NonFiniteField("field not finite at center");
  const double h2 = h * h;
  double acc = 0.0;
  EvalPoint probe = s;
  for (Eigen::Index i = 0; i < d; ++i) {
    probe(i) = s(i) + h;
    const double fp = field(probe);
    probe(i) = s(i) - h;
    const double fm = field(probe);
    probe(i) = s(i);
    if (!std::isfinite(fp) || !std::isfinite(fm))
      throw NonFiniteField("field not finite on stencil");
    acc += (fp - 2.0 * center + fm) / h2;
  }
  return acc;
}

double richardson_laplacian(const ScalarField& field, const EvalPoint& s, double h) {
  return (4.0 * numeric_laplacian(field, s, 0.5 * h) - numeric_laplacian(field, s, h)) / 3.0;
}

double polylap_coefficient(int d, int j) {
  if (d < 3 || d % 2 == 0)
    throw DomainViolation("polylap_coefficient: d must be odd and >= 3");
  const int n_max = (d - 1) / 2;
  if (j < 1 || j > n_max)
    throw DomainViolation("polylap_coefficient: j must lie in [1, (d-1)/2]");
  double product = 1.0;
  for (int i = 0; i < j; ++i) product *= static_cast<double>(d - 1 - 2 * i);
  return (j % 2 == 0 ? -1.0 : 1.0) * product;  // (-1)^{j+1}
}

double corollary_alpha_magnitude(int d) {
  if (d < 3 || d % 2 == 0)
    throw DomainViolation("corollary_alpha_magnitude: d must be odd and >= 3");
  double product = 1.0;
  for (int f = d - 1; f >= 2; f -= 2) product *= static_cast<double>(f);
  return product * d * (d - 2) * std::pow(std::numbers::pi, 0.5 * d) /
         std::tgamma(0.5 * d + 1.0);
}

int corollary_alpha_formula_sign(int d) {
  if (d < 3 || d % 2 == 0)
    throw DomainViolation("corollary_alpha_formula_sign: d must be odd and >= 3");
  const int n = (d - 1) / 2;
  return (n - 1) % 2 == 0 ? 1 : -1;
}

namespace {

double relative_error(double lhs, double rhs, double floor) {
  return std::abs(lhs - rhs) / std::max(std::abs(rhs), floor);
}

void finalize(VerificationReport& report) {
  report.passed = true;
  for (double e : report.relative_errors)
    if (!(e <= report.settings.tolerance)) report.passed = false;
}

}  // namespace

VerificationReport verify_lemma4(const MixtureModel& model, const std::vector<double>& points,
                                 Eigen::Index n, std::uint64_t seed, double h) {
  model.validate();
  if (model.dim() != 1) throw DimensionMismatch("verify_lemma4 requires d = 1");
  const SampleSet sample = sample_mixture(model, n, seed);  // shared across the stencil
  const ScalarField field = [&](const EvalPoint& s) { return k_function(sample, s); };

  VerificationReport report;
  report.identity = "lemma4";
  report.settings = VerifySettings{h, n, seed, 0.05, 0.02};
  for (double p : points) {
    EvalPoint s(1);
    s << p;
    const double lhs = richardson_laplacian(field, s, h);
    const double rhs = 2.0 * density(model, s);
    report.evaluation_points.push_back(s);
    report.lhs.push_back(lhs);
    report.rhs.push_back(rhs);
    report.relative_errors.push_back(relative_error(lhs, rhs, report.settings.scale_floor));
  }
  finalize(report);
  return report;
}

VerificationReport verify_theorem(const MixtureModel& model, int j,
                                  const std::vector<EvalPoint>& points, Eigen::Index n,
                                  std::uint64_t seed, double h) {
  model.validate();
  const int d = static_cast<int>(model.dim());
  polylap_coefficient(d, j);  // validates d odd >= 3 and the j range
  const SampleSet sample = sample_mixture(model, n, seed);
  const ScalarField base = [&](const EvalPoint& s) { return k_function(sample, s); };

  // j-fold nested central-difference Laplacian at a fixed step.
  std::function<double(const EvalPoint&, double, int)> iterated =
      [&](const EvalPoint& s, double step, int level) -> double {
    if (level == 1) return numeric_laplacian(base, s, step);
    const ScalarField inner = [&](const EvalPoint& q) {
      return iterated(q, step, level - 1);
    };
    return numeric_laplacian(inner, s, step);
  };

  VerificationReport report;
  report.identity = "theorem";
  report.settings = VerifySettings{h, n, seed, j == 1 ? 0.05 : 0.10, 0.02};
  const double coeff = polylap_coefficient(d, j);
  for (const auto& s : points) {
    if (s.size() != d) throw DimensionMismatch("verify_theorem: point dimension mismatch");
    const double lap_h = iterated(s, h, j);
    const double lap_h2 = iterated(s, 0.5 * h, j);
    const double lhs = (4.0 * lap_h2 - lap_h) / 3.0;
    const double rhs = coeff * mean_inverse_norm_power(sample, s, 2 * j - 1);
    report.evaluation_points.push_back(s);
    report.lhs.push_back(lhs);
    report.rhs.push_back(rhs);
    report.relative_errors.push_back(relative_error(lhs, rhs, report.settings.scale_floor));
  }
  finalize(report);
  return report;
}

VerificationReport verify_corollary(const MixtureModel& model,
                                    const std::vector<EvalPoint>& points, Eigen::Index n,
                                    std::uint64_t seed, double h) {
  model.validate();
  if (model.dim() != 3) throw DimensionMismatch("verify_corollary requires d = 3");
  const SampleSet sample = sample_mixture(model, n, seed);
  // Laplacian of the Theorem's j = 1 expectation field, not a fourth
  // difference of the raw Monte-Carlo sums: differencing the smooth field
  // keeps the noise amplification at h^-2 instead of h^-4.
  const ScalarField field = [&](const EvalPoint& s) {
    return 2.0 * mean_inverse_norm_power(sample, s, 1);
  };
  const double alpha_mag = corollary_alpha_magnitude(3);

  VerificationReport report;
  report.identity = "corollary";
  report.settings = VerifySettings{h, n, seed, 0.05, 0.02};
  report.formula_sign = corollary_alpha_formula_sign(3);
  for (const auto& s : points) {
    if (s.size() != 3) throw DimensionMismatch("verify_corollary: point dimension mismatch");
    const double lhs = richardson_laplacian(field, s, h);
    const double rhs = alpha_mag * density(model, s);
    report.evaluation_points.push_back(s);
    report.lhs.push_back(lhs);
    report.rhs.push_back(rhs);
    report.relative_errors.push_back(
        relative_error(std::abs(lhs), rhs, report.settings.scale_floor));
    report.observed_signs.push_back(lhs > 0.0 ? 1 : (lhs < 0.0 ? -1 : 0));
  }
  finalize(report);
  return report;
}

nlohmann::json VerificationReport::to_json() const {
  nlohmann::json j;
  j["identity"] = identity;
  auto pts = nlohmann::json::array();
  for (const auto& p : evaluation_points) {
    auto row = nlohmann::json::array();
    for (Eigen::Index i = 0; i < p.size(); ++i) row.push_back(p(i));
    pts.push_back(row);
  }
  j["evaluation_points"] = pts;
  j["lhs"] = lhs;
  j["rhs"] = rhs;
  j["relative_errors"] = relative_errors;
  j["passed"] = passed;
  j["settings"] = {{"h", settings.h},
                   {"n", settings.n},
                   {"seed", settings.seed},
                   {"tolerance", settings.tolerance},
                   {"scale_floor", settings.scale_floor}};
  if (identity == "corollary") {
    j["observed_signs"] = observed_signs;
    j["formula_sign"] = formula_sign;
  }
  return j;
}

}  // namespace kq
