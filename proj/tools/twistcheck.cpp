#include <iostream>

#include "twistcheck/app.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return twistcheck::run_cli(args, std::cout, std::cerr);
}
