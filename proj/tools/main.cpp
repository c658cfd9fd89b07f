#include <iostream>
#include <string>
#include <vector>

#include "isexplore/cli.hpp"

int main(int argc, char** argv) {
  return isexplore::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
