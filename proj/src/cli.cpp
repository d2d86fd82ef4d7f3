#include "kquant/cli.hpp"

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "kquant/contours.hpp"
#include "kquant/distributions.hpp"
#include "kquant/io.hpp"
#include "kquant/ktransform.hpp"
#include "kquant/solver.hpp"
#include "kquant/svg.hpp"
#include "kquant/verify.hpp"

namespace kq::cli {

namespace {

namespace fs = std::filesystem;

Eigen::VectorXd parse_vector(const std::string& text, const char* flag) {
  std::vector<double> values;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    const std::string token =
        text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    try {
      std::size_t used = 0;
      const double v = std::stod(token, &used);
      if (used != token.size() || !std::isfinite(v)) throw std::invalid_argument(token);
      values.push_back(v);
    } catch (const std::exception&) {
      throw DomainViolation(std::string(flag) + ": expected comma-separated decimals, got '" +
                            text + "'");
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  Eigen::VectorXd out(static_cast<Eigen::Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) out(static_cast<Eigen::Index>(i)) = values[i];
  return out;
}

std::string join_vector(const Eigen::VectorXd& v) {
  std::string out;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += format_double(v(i));
  }
  return out;
}

FileFormat pick_format(const std::string& format_flag, const fs::path& out) {
  if (format_flag == "json") return FileFormat::Json;
  if (format_flag == "csv") return FileFormat::Csv;
  return format_from_path(out);
}

struct GlobalOpts {
  std::uint64_t seed = 1;
  bool seed_given = false;
  std::string out;
  std::string format = "csv";
  bool skip_header = false;
};

SampleSet make_distribution(const std::string& dist, Eigen::Index n, std::uint64_t seed) {
  if (dist == "gauss075") return figure1_gaussian(n, seed);
  if (dist == "banana") return sample_mixture(banana_model(), n, seed);
  if (dist == "spiral") return spiral_sample(n, seed);
  if (dist == "square") return square_sample(n, seed);
  throw DomainViolation("--dist: unknown distribution '" + dist + "'");
}

Eigen::Index default_n(const std::string& dist) {
  if (dist == "gauss075") return kFigure1N;
  if (dist == "banana") return kBananaN;
  if (dist == "spiral") return kSpiralN;
  return kSquareN;
}

void emit(const GlobalOpts& g, const std::vector<std::pair<std::string, std::string>>& plain,
          nlohmann::json json_doc) {
  if (g.format == "json") {
    json_doc["version"] = kVersion;
    std::cout << json_doc.dump(2) << '\n';
  } else {
    for (const auto& [key, value] : plain) std::cout << key << ": " << value << '\n';
  }
}

int cmd_sample(const GlobalOpts& g, const std::string& dist, std::int64_t n_flag) {
  if (g.out.empty()) throw DomainViolation("--out: required for sample");
  const Eigen::Index n = n_flag > 0 ? static_cast<Eigen::Index>(n_flag) : default_n(dist);
  const SampleSet sample = make_distribution(dist, n, g.seed);
  save_matrix(sample.points(), g.out, pick_format(g.format, g.out));
  std::cout << "wrote " << sample.size() << " points to " << g.out << '\n';
  return 0;
}

int cmd_ktransform(const GlobalOpts& g, const std::string& data, const std::string& at,
                   double exclude_radius) {
  const SampleSet sample = load_samples(data, format_from_path(data), g.skip_header);
  const Eigen::VectorXd s = parse_vector(at, "--at");
  const TransformValue tv = k_transform(sample, s, exclude_radius);
  emit(g,
       {{"transform", join_vector(tv.g)}, {"norm", format_double(tv.norm)}},
       {{"command", "ktransform"},
        {"transform", std::vector<double>(tv.g.data(), tv.g.data() + tv.g.size())},
        {"norm", tv.norm}});
  return 0;
}

int cmd_quantile(const GlobalOpts& g, const std::string& data, const std::string& v_text,
                 double tol, int max_iter, const std::string& init,
                 const std::string& init_point) {
  const SampleSet sample = load_samples(data, format_from_path(data), g.skip_header);
  const Direction v(parse_vector(v_text, "--v"));
  SolverConfig cfg;
  cfg.tol = tol;
  cfg.max_iter = max_iter;
  if (init == "mean") {
    cfg.init = SolverConfig::Init::Mean;
  } else if (init == "random") {
    cfg = SolverConfig::seeded_random_init(g.seed);
    cfg.tol = tol;
    cfg.max_iter = max_iter;
  } else if (init == "point") {
    cfg = SolverConfig::given_init(parse_vector(init_point, "--init-point"));
    cfg.tol = tol;
    cfg.max_iter = max_iter;
  } else {
    throw DomainViolation("--init: expected mean|random|point");
  }
  const SolverReport rep = solve_quantile(sample, v, cfg);
  emit(g,
       {{"quantile", join_vector(rep.quantile)},
        {"iterations", std::to_string(rep.iterations)},
        {"final_step", format_double(rep.final_step)},
        {"converged", rep.converged ? "true" : "false"},
        {"objective", format_double(rep.objective_trace.back())}},
       {{"command", "quantile"},
        {"quantile", std::vector<double>(rep.quantile.data(),
                                         rep.quantile.data() + rep.quantile.size())},
        {"iterations", rep.iterations},
        {"final_step", rep.final_step},
        {"converged", rep.converged},
        {"objective", rep.objective_trace.back()}});
  return rep.converged ? 0 : 1;
}

int cmd_contour(const GlobalOpts& g, const std::string& data, const std::string& radii_text,
                int m, double tol, int max_iter) {
  if (g.out.empty()) throw DomainViolation("--out: required for contour");
  const SampleSet sample = load_samples(data, format_from_path(data), g.skip_header);
  const Eigen::VectorXd radii_vec = parse_vector(radii_text, "--radii");
  std::vector<double> radii(radii_vec.data(), radii_vec.data() + radii_vec.size());
  SolverConfig cfg;
  cfg.tol = tol;
  cfg.max_iter = max_iter;
  const ContourSet contours = compute_contours(sample, radii, m, cfg);

  const FileFormat fmt = pick_format(g.format, g.out);
  if (fmt == FileFormat::Csv) {
    std::ofstream out(g.out, std::ios::binary);
    if (!out) throw IOFailure("cannot write " + g.out);
    out << "radius,angle_index,x,y\n";
    for (std::size_t c = 0; c < contours.polylines.size(); ++c)
      for (std::size_t j = 0; j < contours.polylines[c].size(); ++j)
        out << format_double(contours.radii[c]) << ',' << j << ','
            << format_double(contours.polylines[c][j].x()) << ','
            << format_double(contours.polylines[c][j].y()) << '\n';
    if (!out.flush()) throw IOFailure("write failed: " + g.out);
  } else {
    nlohmann::json doc;
    doc["version"] = kVersion;
    doc["command"] = "contour";
    doc["m"] = m;
    auto arr = nlohmann::json::array();
    for (std::size_t c = 0; c < contours.polylines.size(); ++c) {
      nlohmann::json entry;
      entry["radius"] = contours.radii[c];
      auto verts = nlohmann::json::array();
      for (const auto& p : contours.polylines[c]) verts.push_back({p.x(), p.y()});
      entry["vertices"] = verts;
      arr.push_back(entry);
    }
    doc["contours"] = arr;
    std::ofstream out(g.out, std::ios::binary);
    if (!out) throw IOFailure("cannot write " + g.out);
    out << doc.dump(2) << '\n';
    if (!out.flush()) throw IOFailure("write failed: " + g.out);
  }
  std::cout << "wrote " << contours.polylines.size() << " contours to " << g.out << '\n';
  return 0;
}

int cmd_classify(const GlobalOpts& g, const std::string& data, double threshold, bool no_loo) {
  const SampleSet sample = load_samples(data, format_from_path(data), g.skip_header);
  const auto rows = classify_outliers(sample, threshold, !no_loo);
  std::ostringstream body;
  if (g.format == "json") {
    nlohmann::json doc;
    doc["version"] = kVersion;
    doc["command"] = "classify";
    doc["threshold"] = threshold;
    doc["leave_one_out"] = !no_loo;
    auto arr = nlohmann::json::array();
    for (const auto& r : rows)
      arr.push_back({{"index", r.index}, {"norm", r.norm}, {"outlier", r.is_outlier}});
    doc["rows"] = arr;
    body << doc.dump(2) << '\n';
  } else {
    body << "index,norm,outlier\n";
    for (const auto& r : rows)
      body << r.index << ',' << format_double(r.norm) << ',' << (r.is_outlier ? 1 : 0) << '\n';
  }
  if (g.out.empty()) {
    std::cout << body.str();
  } else {
    std::ofstream out(g.out, std::ios::binary);
    if (!out) throw IOFailure("cannot write " + g.out);
    out << body.str();
    if (!out.flush()) throw IOFailure("write failed: " + g.out);
  }
  return 0;
}

std::vector<EvalPoint> default_eval_points(int d) {
  std::vector<EvalPoint> pts;
  pts.push_back(Eigen::VectorXd::Zero(d));
  const double radii[] = {0.5, 1.0, 1.5};
  for (int i = 0; i < 3; ++i) {
    Eigen::VectorXd p = Eigen::VectorXd::Zero(d);
    p(i % d) = radii[i];
    pts.push_back(p);
  }
  pts.push_back(Eigen::VectorXd::Constant(d, 0.8));
  return pts;
}

int cmd_verify(const GlobalOpts& g, const std::string& identity, int d, int j,
               std::int64_t n_flag, double h_flag) {
  VerificationReport report;
  if (identity == "lemma4") {
    if (d != 1) throw DomainViolation("--d: lemma4 requires d = 1");
    const Eigen::Index n = n_flag > 0 ? n_flag : 1000000;
    const double h = h_flag > 0 ? h_flag : 0.05;
    const MixtureModel model =
        single_gaussian(Eigen::VectorXd::Zero(1), Eigen::MatrixXd::Identity(1, 1));
    report = verify_lemma4(model, {0.0, 0.5, 1.0, 1.5}, n, g.seed, h);
  } else if (identity == "theorem") {
    const Eigen::Index n = n_flag > 0 ? n_flag : 100000;
    const double h = h_flag > 0 ? h_flag : 0.05;
    const MixtureModel model =
        single_gaussian(Eigen::VectorXd::Zero(d), Eigen::MatrixXd::Identity(d, d));
    report = verify_theorem(model, j, default_eval_points(d), n, g.seed, h);
  } else if (identity == "corollary") {
    if (d != 3) throw DomainViolation("--d: corollary verification runs at d = 3");
    // the singular-kernel variance of this check needs a wide stencil and a
    // large sample; see README
    const Eigen::Index n = n_flag > 0 ? n_flag : 4000000;
    const double h = h_flag > 0 ? h_flag : 0.6;
    const MixtureModel model =
        single_gaussian(Eigen::VectorXd::Zero(3), Eigen::MatrixXd::Identity(3, 3));
    report = verify_corollary(model, default_eval_points(3), n, g.seed, h);
  } else {
    throw DomainViolation("--identity: expected lemma4|theorem|corollary");
  }

  if (g.format == "json") {
    nlohmann::json doc = report.to_json();
    doc["version"] = kVersion;
    std::cout << doc.dump(2) << '\n';
  } else {
    std::cout << "identity: " << report.identity << "  (h = " << report.settings.h
              << ", n = " << report.settings.n << ", seed = " << report.settings.seed
              << ", tolerance = " << report.settings.tolerance << ")\n";
    for (std::size_t i = 0; i < report.lhs.size(); ++i) {
      std::cout << "  s = (" << join_vector(report.evaluation_points[i]) << ")"
                << "  lhs = " << format_double(report.lhs[i])
                << "  rhs = " << format_double(report.rhs[i])
                << "  rel_err = " << format_double(report.relative_errors[i])
                << (report.relative_errors[i] <= report.settings.tolerance ? "  pass" : "  FAIL")
                << '\n';
    }
    if (report.identity == "corollary") {
      std::cout << "  observed sign:";
      for (int sgn : report.observed_signs) std::cout << ' ' << sgn;
      std::cout << "  (formula sign " << report.formula_sign << ")\n";
    }
    std::cout << (report.passed ? "PASSED" : "FAILED") << '\n';
  }
  if (!g.out.empty()) {
    nlohmann::json doc = report.to_json();
    doc["version"] = kVersion;
    std::ofstream out(g.out, std::ios::binary);
    if (!out) throw IOFailure("cannot write " + g.out);
    out << doc.dump(2) << '\n';
    if (!out.flush()) throw IOFailure("write failed: " + g.out);
  }
  return 0;
}

int cmd_figure(const GlobalOpts& g, const std::string& preset, const std::string& radii_text,
               int m, double tol) {
  if (g.out.empty()) throw DomainViolation("--out: required for figure");
  static const std::map<std::string, std::pair<std::string, std::uint64_t>> presets = {
      {"fig1", {"gauss075", kFigure1Seed}},
      {"fig2", {"banana", kBananaSeed}},
      {"fig3", {"spiral", kSpiralSeed}},
      {"fig4", {"square", kSquareSeed}},
  };
  const auto it = presets.find(preset);
  if (it == presets.end()) throw DomainViolation("--preset: expected fig1|fig2|fig3|fig4");
  const auto& [dist, preset_seed] = it->second;
  const std::uint64_t seed = g.seed_given ? g.seed : preset_seed;

  fs::create_directories(g.out);
  const SampleSet sample = make_distribution(dist, default_n(dist), seed);
  const Eigen::VectorXd radii_vec = parse_vector(radii_text, "--radii");
  SolverConfig cfg;
  cfg.tol = tol;
  const ContourSet contours = compute_contours(
      sample, std::vector<double>(radii_vec.data(), radii_vec.data() + radii_vec.size()), m,
      cfg);

  const fs::path dir(g.out);
  save_matrix(sample.points(), dir / (preset + "_sample.csv"), FileFormat::Csv);
  render_figure(sample, contours, FigureSide::Domain, dir / (preset + "_domain.svg"));
  render_figure(sample, contours, FigureSide::Codomain, dir / (preset + "_codomain.svg"));
  std::cout << "wrote " << preset << " sample, domain and codomain figures to " << g.out
            << '\n';
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args) {
  CLI::App app{"Empirical K-transform, geometric quantiles and contour diagnostics"};
  app.fallthrough();
  app.require_subcommand(1);

  GlobalOpts g;
  app.add_option("--seed", g.seed, "RNG seed");
  app.add_option("--out", g.out, "output file or directory");
  app.add_option("--format", g.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_flag("--skip-header", g.skip_header, "skip one header row when reading CSV data");

  auto* sample_cmd = app.add_subcommand("sample", "draw a synthetic dataset");
  std::string dist;
  std::int64_t n_flag = -1;
  sample_cmd->add_option("--dist", dist, "gauss075|banana|spiral|square")
      ->required()
      ->check(CLI::IsMember({"gauss075", "banana", "spiral", "square"}));
  sample_cmd->add_option("--n", n_flag, "number of points (default per distribution)");

  auto* kt_cmd = app.add_subcommand("ktransform", "evaluate the K-transform at a point");
  std::string data, at;
  double exclude_radius = kDefaultExcludeRadius;
  kt_cmd->add_option("--data", data, "input matrix (csv or json)")->required();
  kt_cmd->add_option("--at", at, "evaluation point, e.g. 0.3,-0.7")->required();
  kt_cmd->add_option("--exclude-radius", exclude_radius, "atom exclusion radius");

  auto* q_cmd = app.add_subcommand("quantile", "solve the inverse K-transform");
  std::string v_text, init = "mean", init_point;
  double tol = 1e-10;
  int max_iter = 10000;
  q_cmd->add_option("--data", data, "input matrix (csv or json)")->required();
  q_cmd->add_option("--v", v_text, "direction in the open unit ball, e.g. 0.25,0")->required();
  q_cmd->add_option("--tol", tol, "stop when the iterate displacement drops to tol");
  q_cmd->add_option("--max-iter", max_iter, "iteration cap");
  q_cmd->add_option("--init", init, "mean|random|point")->check(CLI::IsMember({"mean", "random", "point"}));
  q_cmd->add_option("--init-point", init_point, "start point when --init point");

  auto* c_cmd = app.add_subcommand("contour", "inverse K-transform contour polylines");
  std::string radii_text = "0.5,0.75,0.9";
  int m = kDefaultContourResolution;
  c_cmd->add_option("--data", data, "input matrix (csv or json)")->required();
  c_cmd->add_option("--radii", radii_text, "comma-separated radii in [0,1)");
  c_cmd->add_option("--m", m, "vertices per contour");
  c_cmd->add_option("--tol", tol, "solver tolerance");
  c_cmd->add_option("--max-iter", max_iter, "solver iteration cap");

  auto* cl_cmd = app.add_subcommand("classify", "radial outlier classification");
  double threshold = 0.9;
  bool no_loo = false;
  cl_cmd->add_option("--data", data, "input matrix (csv or json)")->required();
  cl_cmd->add_option("--threshold", threshold, "transform-norm threshold in (0,1]")->required();
  cl_cmd->add_flag("--no-loo", no_loo, "score each point against the full sample");

  auto* v_cmd = app.add_subcommand("verify", "numeric checks of the density identities");
  std::string identity;
  int d = 3, j = 1;
  std::int64_t vn = -1;
  double vh = -1.0;
  v_cmd->add_option("--identity", identity, "lemma4|theorem|corollary")
      ->required()
      ->check(CLI::IsMember({"lemma4", "theorem", "corollary"}));
  v_cmd->add_option("--d", d, "dimension (lemma4: 1, corollary: 3)");
  v_cmd->add_option("--j", j, "Laplacian order for theorem");
  v_cmd->add_option("--n", vn, "Monte-Carlo sample size");
  v_cmd->add_option("--h", vh, "finite-difference step");

  auto* f_cmd = app.add_subcommand("figure", "regenerate a demo figure pair");
  std::string preset;
  f_cmd->add_option("--preset", preset, "fig1|fig2|fig3|fig4")
      ->required()
      ->check(CLI::IsMember({"fig1", "fig2", "fig3", "fig4"}));
  f_cmd->add_option("--radii", radii_text, "comma-separated radii in [0,1)");
  f_cmd->add_option("--m", m, "vertices per contour");
  f_cmd->add_option("--tol", tol, "solver tolerance");

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("kquant");
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  g.seed_given = app.count("--seed") > 0;
  if (identity == "lemma4" && v_cmd->count("--d") == 0) d = 1;

  try {
    if (sample_cmd->parsed()) return cmd_sample(g, dist, n_flag);
    if (kt_cmd->parsed()) return cmd_ktransform(g, data, at, exclude_radius);
    if (q_cmd->parsed()) return cmd_quantile(g, data, v_text, tol, max_iter, init, init_point);
    if (c_cmd->parsed()) return cmd_contour(g, data, radii_text, m, tol, max_iter);
    if (cl_cmd->parsed()) return cmd_classify(g, data, threshold, no_loo);
    if (v_cmd->parsed()) return cmd_verify(g, identity, d, j, vn, vh);
    if (f_cmd->parsed()) return cmd_figure(g, preset, radii_text, m, tol);
  } catch (const IOFailure& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

}  // namespace kq::cli
