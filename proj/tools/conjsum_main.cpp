#include <iostream>

#include "conjsum/cli.hpp"

int main(int argc, char** argv) { return conjsum::cli::run(argc, argv, std::cout, std::cerr); }
