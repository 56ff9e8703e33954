#include <iostream>

#include "lpn/cli.hpp"

int main(int argc, char** argv) { return lpn::cli_main(argc, argv, std::cout, std::cerr); }
