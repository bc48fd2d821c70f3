#include <iostream>
#include <string>
#include <vector>

#include "fairsub/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return fairsub::cli::run(args, std::cout, std::cerr);
}
