#include <iostream>

#include "arrowlab/cli.hpp"

int main(int argc, char** argv) { return arrowlab::cli::run(argc, argv, std::cout, std::cerr); }
