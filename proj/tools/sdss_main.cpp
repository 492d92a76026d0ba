#include <iostream>

#include "sdss/cli.h"

int main(int argc, char **argv) { return sdss::run_cli(argc, argv, std::cout, std::cerr); }
