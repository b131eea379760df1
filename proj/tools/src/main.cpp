#include <iostream>

#include "sewing_cli/app.hpp"

int main(int argc, char** argv) { return sewing::cli::cli_main(argc, argv, std::cout, std::cerr); }
