#ifndef KQUANT_CLI_HPP_
#define KQUANT_CLI_HPP_

#include <string>
#include <vector>

namespace kq::cli {

inline constexpr const char* kVersion = "0.1.0";

/// Runs the command line given the arguments after the program name.
/// Exit codes: 0 success, 1 usage/domain error, 2 I/O error.
int run(const std::vector<std::string>& args);

}  // namespace kq::cli

#endif  // KQUANT_CLI_HPP_
