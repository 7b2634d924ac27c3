#include <iostream>

#include "mpg/cli.hpp"

int main(int argc, char** argv) {
  return mpg::cli::run(argc, argv, std::cout, std::cerr);
}
