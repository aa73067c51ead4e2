#include <iostream>

#include "cmut/cli.hpp"

int main(int argc, char** argv) { return cmut::cli::main(argc, argv, std::cout, std::cerr); }
