#include <iostream>
#include <string>
#include <vector>

#include "vfk/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return vfk::cli::run(args, std::cout, std::cerr);
}
