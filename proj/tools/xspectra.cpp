#include <iostream>

#include "xspectra/cli.hpp"

int main(int argc, char** argv) { return xspectra::cli::run(argc, argv, std::cout, std::cerr); }
