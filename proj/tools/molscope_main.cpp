#include <iostream>
#include <string>
#include <vector>

#include "molscope/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return molscope::run_cli(args, std::cout, std::cerr);
}
