#include <iostream>

#include "edgeprog/cli/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return edgeprog::cli::run_cli(args, std::cout, std::cerr);
}
