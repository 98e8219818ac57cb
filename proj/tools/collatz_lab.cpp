#include <iostream>
#include <string>
#include <vector>

#include "collatz/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv, argv + argc);
  return collatz::main_entry(args, std::cout, std::cerr);
}
