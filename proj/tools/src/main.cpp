#include <iostream>

#include "cayley_ising_cli/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return cayley_ising::cli::run(args, std::cout, std::cerr);
}
