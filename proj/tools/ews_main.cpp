#include <iostream>
#include <string>
#include <vector>

#include "ews/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return ews::run_cli(args, std::cout, std::cerr);
}
