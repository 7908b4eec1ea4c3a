#include <iostream>

#include "chronos/cli.hpp"

int main(int argc, char** argv) { return chronos::run_cli(argc, argv, std::cout, std::cerr); }
