#include <string>
#include <vector>

#include "smartload/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return smartload::run_command(args);
}
