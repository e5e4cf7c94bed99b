#include <iostream>

#include "dyadic/cli.hpp"

int main(int argc, char** argv) { return dyadic::cli::main(argc, argv, std::cout, std::cerr); }
