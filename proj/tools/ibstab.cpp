#include <iostream>
#include <string>
#include <vector>

#include "ibstab/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return ibstab::dispatch(args, std::cout, std::cerr);
}
