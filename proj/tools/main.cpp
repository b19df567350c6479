#include <iostream>
#include <string>
#include <vector>

#include "torus_cli/commands.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  const int code = torus::cli::run(args, std::cout, std::cerr);
  std::cout.flush();
  return code;
}
