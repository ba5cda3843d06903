#include <iostream>

#include "curvelab/cli.hpp"

int main(int argc, char **argv) {
  return curvelab::cli::dispatch({argv + 1, argv + argc}, std::cout, std::cerr);
}
