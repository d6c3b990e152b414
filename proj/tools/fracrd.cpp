#include <iostream>

#include "fracrd/cli/commands.hpp"

int main(int argc, char** argv) { return fracrd::cli::run_cli(argc, argv, std::cout, std::cerr); }
