#include <iostream>

#include "gnrel/cli.hpp"

int main(int argc, char** argv) { return gnrel::run_cli(argc, argv, std::cout, std::cerr); }
