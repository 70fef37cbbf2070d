#include <iostream>

#include "rmprs/cli.hpp"

int main(int argc, char** argv) { return rmprs::cli::run_cli(argc, argv, std::cout, std::cerr); }
