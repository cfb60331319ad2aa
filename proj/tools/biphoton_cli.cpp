#include <iostream>

#include "biphoton/shell.hpp"

int main(int argc, char** argv) { return biphoton::run_cli(argc, argv, std::cout, std::cerr); }
