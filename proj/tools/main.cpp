#include <iostream>

#include "primearcs/cli.hpp"

int main(int argc, char** argv) { return primearcs::cli::main_entry(argc, argv, std::cout, std::cerr); }
