#include <iostream>
#include <string>
#include <vector>

#include "etflab/cli.hpp"

int main(int argc, char** argv) {
  return etflab::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
