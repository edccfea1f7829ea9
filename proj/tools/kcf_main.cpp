#include "kcf/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return kcf::cli::run(argc, argv, std::cout, std::cerr); }
