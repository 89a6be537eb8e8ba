#include <iostream>

#include "rosefit/commands.hpp"

int main(int argc, char** argv) { return rosefit::run_cli(argc, argv, std::cout, std::cerr); }
