#include <iostream>

#include "wtah/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return wtah::run_cli(args, std::cout, std::cerr);
}
