#include "gzeta/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return gzeta::cli::main_entry(argc, argv, std::cout, std::cerr); }
