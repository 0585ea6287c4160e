#include <iostream>

#include "omegak/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return omk::run_cli(args, std::cout, std::cerr);
}
