#include <iostream>

#include "dhym_cli/cli.hpp"

int main(int argc, char** argv) { return dhym::cli::run(argc, argv, std::cout, std::cerr); }
