#include "kquant/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace kq {

FileFormat format_from_path(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return ext == ".json" ? FileFormat::Json : FileFormat::Csv;
}

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

namespace {

double parse_number(std::string_view token, const std::filesystem::path& path,
                    std::size_t line_no) {
  // trim surrounding whitespace; from_chars is strict about the rest
  while (!token.empty() && std::isspace(static_cast<unsigned char>(token.front())))
    token.remove_prefix(1);
  while (!token.empty() && std::isspace(static_cast<unsigned char>(token.back())))
    token.remove_suffix(1);
  double value = 0.0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last)
    throw ParseFailure(path.string() + ":" + std::to_string(line_no) +
                       ": not a number: '" + std::string(token) + "'");
  if (!std::isfinite(value))
    throw ParseFailure(path.string() + ":" + std::to_string(line_no) +
                       ": non-finite value rejected");
  return value;
}

SampleSet load_csv(const std::filesystem::path& path, bool skip_header) {
  std::ifstream in(path);
  if (!in) throw IOFailure("cannot open " + path.string());
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  Eigen::Index d = -1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_no == 1 && skip_header) continue;
    if (line.empty()) continue;
    std::vector<double> row;
    std::size_t start = 0;
    while (true) {
      std::size_t comma = line.find(',', start);
      std::string_view token(line.data() + start,
                             (comma == std::string::npos ? line.size() : comma) - start);
      row.push_back(parse_number(token, path, line_no));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (d < 0) d = static_cast<Eigen::Index>(row.size());
    if (static_cast<Eigen::Index>(row.size()) != d)
      throw ParseFailure(path.string() + ":" + std::to_string(line_no) +
                         ": ragged row (" + std::to_string(row.size()) + " columns, expected " +
                         std::to_string(d) + ")");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseFailure(path.string() + ": no data rows");
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), d);
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < d; ++j) m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  return SampleSet(std::move(m));
}

SampleSet load_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IOFailure("cannot open " + path.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ParseFailure(path.string() + ": invalid JSON: " + e.what());
  }
  if (!doc.is_array() || doc.empty())
    throw ParseFailure(path.string() + ": expected a non-empty array of arrays");
  const std::size_t n = doc.size();
  std::size_t d = 0;
  Eigen::MatrixXd m;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& row = doc[i];
    if (!row.is_array() || row.empty())
      throw ParseFailure(path.string() + ": row " + std::to_string(i) +
                         " is not a non-empty array");
    if (i == 0) {
      d = row.size();
      m.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));
    }
    if (row.size() != d)
      throw ParseFailure(path.string() + ": ragged row " + std::to_string(i));
    for (std::size_t j = 0; j < d; ++j) {
      if (!row[j].is_number())
        throw ParseFailure(path.string() + ": non-numeric entry at row " + std::to_string(i));
      const double v = row[j].get<double>();
      if (!std::isfinite(v))
        throw ParseFailure(path.string() + ": non-finite value rejected");
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
    }
  }
  return SampleSet(std::move(m));
}

}  // namespace

SampleSet load_samples(const std::filesystem::path& path, FileFormat format,
                       bool skip_header) {
  if (!std::filesystem::exists(path)) throw IOFailure("no such file: " + path.string());
  return format == FileFormat::Csv ? load_csv(path, skip_header) : load_json(path);
}

void save_matrix(const Eigen::MatrixXd& rows, const std::filesystem::path& path,
                 FileFormat format) {
  if (!rows.allFinite()) throw DomainViolation("save_matrix: non-finite values");
  std::ofstream out(path, std::ios::binary);  // binary: LF endings everywhere
  if (!out) throw IOFailure("cannot write " + path.string());
  if (format == FileFormat::Csv) {
    for (Eigen::Index i = 0; i < rows.rows(); ++i) {
      for (Eigen::Index j = 0; j < rows.cols(); ++j) {
        if (j) out << ',';
        out << format_double(rows(i, j));
      }
      out << '\n';
    }
  } else {
    out << "[\n";
    for (Eigen::Index i = 0; i < rows.rows(); ++i) {
      out << "  [";
      for (Eigen::Index j = 0; j < rows.cols(); ++j) {
        if (j) out << ", ";
        out << format_double(rows(i, j));
      }
      out << (i + 1 < rows.rows() ? "],\n" : "]\n");
    }
    out << "]\n";
  }
  if (!out.flush()) throw IOFailure("write failed: " + path.string());
}

void save_matrix(const std::vector<Eigen::VectorXd>& rows,
                 const std::filesystem::path& path, FileFormat format) {
  if (rows.empty()) throw DomainViolation("save_matrix: empty row list");
  const Eigen::Index d = rows.front().size();
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), d);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != d) throw DomainViolation("save_matrix: rows of unequal arity");
    m.row(static_cast<Eigen::Index>(i)) = rows[i].transpose();
  }
  save_matrix(m, path, format);
}

}  // namespace kq
