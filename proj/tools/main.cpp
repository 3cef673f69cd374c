#include <iostream>
#include <string>
#include <vector>

#include "structmon/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return structmon::run(args, std::cout, std::cerr);
}
