#include <iostream>
#include <string>
#include <vector>

#include "lexopt/cli/commands.hpp"

int main(int argc, char** argv) {
  return lexopt::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
