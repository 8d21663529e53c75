#include <iostream>

#include "dispersive/cli.hpp"

int main(int argc, char** argv) { return dispersive::run_command(argc, argv, std::cout, std::cerr); }
