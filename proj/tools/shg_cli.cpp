#include <iostream>

#include "shg/cli.hpp"

int main(int argc, char** argv) { return shg::cli::main(argc, argv, std::cout, std::cerr); }
