#include <iostream>

#include "chowla_cli/cli.hpp"

int main(int argc, char** argv) {
  return chowla::cli::run(argc, argv, std::cout, std::cerr);
}
