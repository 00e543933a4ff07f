#include <iostream>

#include "kamp/cli.hpp"

int main(int argc, char** argv) {
  return kamp::cli::run({argv, argv + argc}, std::cout, std::cerr);
}
