#include "crq/cli/app.hpp"

#include <iostream>

int main(int argc, char** argv) { return crq::cli::run(argc, argv, std::cout, std::cerr); }
