#include <iostream>

#include "eyenav/cli.hpp"

int main(int argc, char** argv) { return eyenav::cli::run(argc, argv, std::cout, std::cerr); }
