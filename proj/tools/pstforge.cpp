#include "pstforge/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return pstforge::run_cli(argc, argv, std::cout, std::cerr); }
