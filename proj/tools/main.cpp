#include <iostream>

#include "eulerconf/cli.hpp"

int main(int argc, char** argv) { return eulerconf::cli::run(argc, argv, std::cout, std::cerr); }
