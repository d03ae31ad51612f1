#include <iostream>

#include "glingam/cli.hpp"

int main(int argc, char** argv) { return glingam::cli::run(argc, argv, std::cout, std::cerr); }
