#include <iostream>
#include <string>
#include <vector>

#include "shapemotion/cli.hpp"

int main(int argc, char** argv) {
  return shapemotion::dispatch(std::vector<std::string>(argv + 1, argv + argc), std::cout,
                               std::cerr);
}
