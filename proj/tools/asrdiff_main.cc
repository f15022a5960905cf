#include <iostream>
#include <string>
#include <vector>

#include "asrdiff/cli.h"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return asrdiff::RunMain(args, std::cout, std::cerr);
}
