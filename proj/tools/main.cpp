#include <iostream>
#include <string>
#include <vector>

#include "mortality/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return mortality::run_cli(args, std::cout, std::cerr);
}
