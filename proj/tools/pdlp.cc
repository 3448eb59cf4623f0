#include <iostream>

#include "pdlp/cli.h"

int main(int argc, char** argv) { return pdlp::cli::Run(argc, argv, std::cout, std::cerr); }
