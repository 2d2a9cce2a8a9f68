#include <iostream>

#include "cera/cli.hpp"

int main(int argc, char** argv) {
    return cera::run_cli(argc, argv, std::cout, std::cerr);
}
