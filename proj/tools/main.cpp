#include <iostream>
#include <string>
#include <vector>

#include "ueps/cli.hpp"

int main(int argc, char** argv) {
  return ueps::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
