#include <iostream>
#include <string>
#include <vector>

#include "facdio/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return facdio::cli::run(args, std::cout, std::cerr);
}
