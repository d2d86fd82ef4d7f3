#include <string>
#include <vector>

#include "kquant/cli.hpp"

int main(int argc, char** argv) {
  return kq::cli::run(std::vector<std::string>(argv + 1, argv + argc));
}
