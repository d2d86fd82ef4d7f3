#include "kquant/svg.hpp"

#include <array>
#include <fstream>
#include <string>

#include "kquant/io.hpp"

namespace kq {

namespace {

constexpr int kCanvas = 640;
constexpr std::array<const char*, 6> kPalette = {"blue",  "red",    "maroon",
                                                 "green", "orange", "purple"};

struct Viewport {
  double x0, y0, x1, y1;  // world box, y up

  double px(double x) const { return (x - x0) / (x1 - x0) * kCanvas; }
  double py(double y) const { return (y1 - y) / (y1 - y0) * kCanvas; }  // flip y
};

Viewport fit_isotropic(double x0, double y0, double x1, double y1) {
  const double cx = 0.5 * (x0 + x1), cy = 0.5 * (y0 + y1);
  const double half = 0.5 * std::max(x1 - x0, y1 - y0) * 1.06 + 1e-9;
  return {cx - half, cy - half, cx + half, cy + half};
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

void open_svg(std::ofstream& out) {
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kCanvas << "\" height=\""
      << kCanvas << "\" viewBox=\"0 0 " << kCanvas << " " << kCanvas << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

}  // namespace

void render_figure(const SampleSet& sample, const ContourSet& contours, FigureSide side,
                   const std::filesystem::path& path) {
  if (sample.dim() != 2) throw DimensionMismatch("render_figure requires d = 2");

  std::ofstream out(path, std::ios::binary);
  if (!out) throw IOFailure("cannot write " + path.string());
  std::filesystem::path csv_path = path;
  csv_path.replace_extension(".csv");
  std::ofstream csv(csv_path, std::ios::binary);
  if (!csv) throw IOFailure("cannot write " + csv_path.string());

  const Eigen::MatrixXd& x = sample.points();

  if (side == FigureSide::Domain) {
    double x0 = x.col(0).minCoeff(), x1 = x.col(0).maxCoeff();
    double y0 = x.col(1).minCoeff(), y1 = x.col(1).maxCoeff();
    for (const auto& poly : contours.polylines)
      for (const auto& p : poly) {
        x0 = std::min(x0, p.x()); x1 = std::max(x1, p.x());
        y0 = std::min(y0, p.y()); y1 = std::max(y1, p.y());
      }
    const Viewport vp = fit_isotropic(x0, y0, x1, y1);

    open_svg(out);
    for (Eigen::Index i = 0; i < x.rows(); ++i)
      out << "<circle cx=\"" << num(vp.px(x(i, 0))) << "\" cy=\"" << num(vp.py(x(i, 1)))
          << "\" r=\"1.5\" fill=\"#555555\" fill-opacity=\"0.45\"/>\n";
    csv << "radius,angle_index,x,y\n";
    for (std::size_t c = 0; c < contours.polylines.size(); ++c) {
      out << "<polygon fill=\"none\" stroke=\"" << kPalette[c % kPalette.size()]
          << "\" stroke-width=\"2\" points=\"";
      const auto& poly = contours.polylines[c];
      for (std::size_t j = 0; j < poly.size(); ++j) {
        if (j) out << ' ';
        out << num(vp.px(poly[j].x())) << ',' << num(vp.py(poly[j].y()));
        csv << format_double(contours.radii[c]) << ',' << j << ','
            << format_double(poly[j].x()) << ',' << format_double(poly[j].y()) << '\n';
      }
      out << "\"/>\n";
    }
    out << "</svg>\n";
  } else {
    const Viewport vp = fit_isotropic(-1.05, -1.05, 1.05, 1.05);
    open_svg(out);
    out << "<circle cx=\"" << num(vp.px(0)) << "\" cy=\"" << num(vp.py(0)) << "\" r=\""
        << num(vp.px(1.0) - vp.px(0.0)) << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
    for (std::size_t c = 0; c < contours.radii.size(); ++c)
      out << "<circle cx=\"" << num(vp.px(0)) << "\" cy=\"" << num(vp.py(0)) << "\" r=\""
          << num((vp.px(1.0) - vp.px(0.0)) * contours.radii[c]) << "\" fill=\"none\" stroke=\""
          << kPalette[c % kPalette.size()] << "\" stroke-width=\"1.5\"/>\n";
    csv << "x,y,norm\n";
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
      const TransformValue tv = k_transform(sample, x.row(i).transpose());
      out << "<circle cx=\"" << num(vp.px(tv.g(0))) << "\" cy=\"" << num(vp.py(tv.g(1)))
          << "\" r=\"1.5\" fill=\"#555555\" fill-opacity=\"0.45\"/>\n";
      csv << format_double(tv.g(0)) << ',' << format_double(tv.g(1)) << ','
          << format_double(tv.norm) << '\n';
    }
    out << "</svg>\n";
  }

  if (!out.flush()) throw IOFailure("write failed: " + path.string());
  if (!csv.flush()) throw IOFailure("write failed: " + csv_path.string());
}

}  // namespace kq
