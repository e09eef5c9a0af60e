#include <iostream>

#include "nullity/cli.hpp"

int main(int argc, char** argv) { return nullity::cli::run(argc, argv, std::cout, std::cerr); }
