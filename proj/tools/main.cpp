#include <iostream>
#include <string>
#include <vector>

#include "tokenlab/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return tokenlab::cli::dispatch(args, std::cout, std::cerr);
}
