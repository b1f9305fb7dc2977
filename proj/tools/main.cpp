#include "hw/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return hw::cli::run(argc, argv, std::cout, std::cerr); }
