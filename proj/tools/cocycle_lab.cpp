#include "cocycle_lab/cli/app.hpp"

#include <iostream>

int main(int argc, char** argv) { return cocycle_lab::cli::run_cli(argc, argv, std::cout, std::cerr); }
