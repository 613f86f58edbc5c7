#include "jetcr/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return jetcr::cli::run(argc, argv, std::cout, std::cerr); }
