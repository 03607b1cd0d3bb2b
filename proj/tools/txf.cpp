#include <iostream>

#include "txf/cli/commands.hpp"

int main(int argc, char** argv) { return txf::cli::run(argc, argv, std::cout, std::cerr); }
