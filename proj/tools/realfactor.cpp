#include <iostream>

#include "realfactor/cli.hpp"

int main(int argc, char** argv) { return realfactor::run_cli(argc, argv, std::cout, std::cerr); }
