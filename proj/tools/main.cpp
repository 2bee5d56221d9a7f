#include <iostream>

#include "ffhalasz/cli.hpp"

int main(int argc, char** argv) { return ffh::cli::run(argc, argv, std::cout, std::cerr); }
