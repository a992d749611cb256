#include "qcomp/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return qcomp::run_cli(argc, argv, std::cout, std::cerr); }
