#include <iostream>

#include "santalo/cli.hpp"

int main(int argc, char** argv) { return santalo::run_cli(argc, argv, std::cout, std::cerr); }
