#include <iostream>

#include "tropiso/cli.hpp"

int main(int argc, char** argv) { return tropiso::cli::run(argc, argv, std::cout, std::cerr); }
