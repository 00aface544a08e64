#include <iostream>
#include <vector>

#include "bccs/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return bccs::run(args, std::cout, std::cerr);
}
