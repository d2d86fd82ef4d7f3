#ifndef KQUANT_IO_HPP_
#define KQUANT_IO_HPP_

#include <filesystem>
#include <string>
#include <vector>

#include "kquant/types.hpp"

namespace kq {

enum class FileFormat { Csv, Json };

/// Picks Csv unless the extension is .json (case-insensitive).
FileFormat format_from_path(const std::filesystem::path& path);

/// Loads an n-by-d matrix. CSV: comma-separated, one point per row, no
/// header unless skip_header is set. JSON: array of arrays of numbers.
/// Rejects ragged rows, non-numeric entries, NaN/Inf, and empty inputs.
SampleSet load_samples(const std::filesystem::path& path, FileFormat format,
                       bool skip_header = false);

/// Writes rows (all of equal arity) to path. Values are serialized with 17
/// significant digits so a save/load cycle reproduces them bit-identically.
void save_matrix(const Eigen::MatrixXd& rows, const std::filesystem::path& path,
                 FileFormat format);
void save_matrix(const std::vector<Eigen::VectorXd>& rows,
                 const std::filesystem::path& path, FileFormat format);

/// 17-significant-digit representation; round-trips any finite double.
std::string format_double(double x);

}  // namespace kq

#endif  // KQUANT_IO_HPP_
