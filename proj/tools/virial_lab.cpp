#include <iostream>
#include <string>
#include <vector>

#include "virlab/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return virlab::cli::main_entry(args, std::cout, std::cerr);
}
