#include <iostream>

#include "visrdv/cli/commands.hpp"

int main(int argc, char** argv) { return visrdv::cli::run_cli(argc, argv, std::cout, std::cerr); }
