#include <iostream>

#include "ffca/cli.hpp"

int main(int argc, char** argv) { return ffca::cli::main(argc, argv, std::cout, std::cerr); }
