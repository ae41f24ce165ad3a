#include "stickbound/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return stickbound::run_cli(args, std::cout, std::cerr);
}
