#include <iostream>
#include <string>
#include <vector>

#include "mcmr/app.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return mcmr::app::run(args, std::cout, std::cerr);
}
