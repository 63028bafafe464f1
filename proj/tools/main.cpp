#include <iostream>
#include <string>
#include <vector>

#include "indexdens/cli_core.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return indexdens::cli_main(args, std::cout, std::cerr);
}
