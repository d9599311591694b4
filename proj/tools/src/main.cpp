#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) { return squeeze::cli::run_cli(argc, argv, std::cout, std::cerr); }
