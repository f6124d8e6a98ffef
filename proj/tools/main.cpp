#include <iostream>

#include "rauzy/cli.hpp"

int main(int argc, char** argv) { return rauzy::cli::run(argc, argv, std::cout, std::cerr); }
