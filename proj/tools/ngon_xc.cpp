#include <iostream>

#include "ngonxc/cli.hpp"

int main(int argc, char** argv) {
  try {
    return ngonxc::cli::run(argc, argv, std::cout, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "ngon-xc: " << e.what() << '\n';
    return 1;
  }
}
