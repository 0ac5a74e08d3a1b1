#include <string>
#include <vector>

#include "skewmix/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return skewmix::run_cli(args);
}
