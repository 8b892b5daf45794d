#include <iostream>

#include "heatcoef/cli.hpp"

int main(int argc, char** argv) { return heatcoef::run_cli(argc, argv, std::cout, std::cerr); }
