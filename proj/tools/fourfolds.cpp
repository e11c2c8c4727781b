#include <iostream>
#include <string>
#include <vector>

#include "fourfolds/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  fourfolds::cli::CliResult res = fourfolds::cli::run(args);
  (res.code == 0 ? std::cout : std::cerr) << res.output;
  return res.code;
}
