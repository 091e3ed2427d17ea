#include <iostream>

#include "infometric/cli.hpp"

int main(int argc, char** argv) { return infometric::cli::run(argc, argv, std::cout, std::cerr); }
