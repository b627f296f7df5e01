#include <iostream>

#include "trimcusum/cli.hpp"

int main(int argc, char** argv) {
  return trimcusum::cli::main_entry(argc, argv, std::cout, std::cerr);
}
