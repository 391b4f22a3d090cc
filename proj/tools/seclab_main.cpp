#include <iostream>

#include "seclab/cli.hpp"

int main(int argc, char** argv) {
    return seclab::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
