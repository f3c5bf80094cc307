#include <iostream>

#include "crari/cli.hpp"

int main(int argc, char** argv) { return crari::main_entry(argc, argv, std::cout, std::cerr); }
