#include <iostream>

#include "fidsim/cli.hpp"

int main(int argc, char** argv) {
  return fidsim::cli::run(argc, argv, std::cerr);
}
