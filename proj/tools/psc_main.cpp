#include <iostream>

#include "psc/cli.hpp"

int main(int argc, char** argv) { return psc::run_cli(argc, argv, std::cout, std::cerr); }
