#include <iostream>
#include <string>
#include <vector>

#include "cbmm_cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return cbmm::cli::run(args, std::cout, std::cerr);
}
