#include <iostream>

#include "orbitcell/cli.hpp"

int main(int argc, char **argv) { return orbitcell::run_command(argc, argv, std::cout, std::cerr); }
