#include "arena/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return arena::cli::run(argc, argv, std::cout, std::cerr); }
