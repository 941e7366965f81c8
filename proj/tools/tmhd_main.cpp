#include <vector>

#include "tmhd/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return tmhd::cli_dispatch(args);
}
