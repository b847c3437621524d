#include <iostream>

#include "resolab/cli.hpp"

int main(int argc, char** argv) { return resolab::run_cli(argc, argv, std::cout, std::cerr); }
