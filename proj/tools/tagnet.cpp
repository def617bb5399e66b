#include <iostream>

#include "tagnet/cli.hpp"

int main(int argc, char** argv) { return tagnet::cli::main(argc, argv, std::cout, std::cerr); }
