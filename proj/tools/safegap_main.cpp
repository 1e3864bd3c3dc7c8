#include <iostream>
#include <string>
#include <vector>

#include "safegap/cli.hpp"

int main(int argc, char** argv) {
  return safegap::run_cli(std::vector<std::string>(argv, argv + argc), std::cout,
                          std::cerr);
}
