#include <iostream>
#include <string>
#include <vector>

#include "hypermatch/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return hypermatch::run_cli(args, std::cout, std::cerr);
}
