#include <iostream>

#include "gaborcx/cli_io.hpp"

int main(int argc, char** argv) { return gaborcx::run_cli(argc, argv, std::cout, std::cerr); }
