#include "npweyl/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return npweyl::cli::run(argc, argv, std::cout, std::cerr); }
