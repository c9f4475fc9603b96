#include <iostream>

#include "nevlab/cli/commands.hpp"

int main(int argc, char** argv) { return nevlab::cli::run(argc, argv, std::cout, std::cerr); }
