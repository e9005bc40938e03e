#include <iostream>

#include "feq/cli/app.hpp"

int main(int argc, char** argv) { return feq::cli::run_app(argc, argv, std::cout, std::cerr); }
