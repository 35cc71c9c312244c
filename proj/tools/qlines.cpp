#include "qlines/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return qlines::cli::dispatch(argc, argv, std::cout); }
