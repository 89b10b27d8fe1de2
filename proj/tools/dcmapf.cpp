#include <iostream>

#include "dcmapf/cli.hpp"

int main(int argc, char** argv) { return dcmapf::run(argc, argv, std::cout, std::cerr); }
