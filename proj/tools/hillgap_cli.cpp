#include <iostream>

#include "hillgap/cli.hpp"

int main(int argc, char** argv) { return hillgap::cli::run(argc, argv, std::cout, std::cerr); }
