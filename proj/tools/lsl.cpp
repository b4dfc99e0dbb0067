#include <iostream>

#include "lsl/cli.hpp"

int main(int argc, char** argv) { return lsl::cli::run(argc, argv, std::cout, std::cerr); }
