#include <iostream>
#include <string>
#include <vector>

#include "scope/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return scope::cli::results_main(args, std::cout, std::cerr);
}
