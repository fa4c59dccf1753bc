#include <iostream>

#include "colimit/cli.hpp"

int main(int argc, char** argv) { return colimit::run_cli(argc, argv, std::cout, std::cerr); }
