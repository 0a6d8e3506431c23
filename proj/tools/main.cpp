#include "lidarscan/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return lidarscan::cli_main(argc, argv, std::cout, std::cerr); }
