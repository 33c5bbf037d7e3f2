#include <iostream>

#include "titlekit/cli.hpp"

int main(int argc, char** argv) { return titlekit::cli::run(argc, argv, std::cout, std::cerr); }
