#include <iostream>

#include "lamod/cli.hpp"

int main(int argc, char** argv) {
  return lamod::cli::run(argc, argv, std::cout, std::cerr);
}
