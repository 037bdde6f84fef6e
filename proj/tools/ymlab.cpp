#include <iostream>

#include "ymlab/runner.hpp"

int main(int argc, char** argv) { return ymlab::run_cli(argc, argv, std::cout, std::cerr); }
