#include <iostream>

#include "fibzeta/cli.hpp"

int main(int argc, char** argv) { return fibzeta::cli::run(argc, argv, std::cout, std::cerr); }
