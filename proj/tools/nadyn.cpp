#include <iostream>

#include "nadyn/cli.hpp"

int main(int argc, char** argv) {
    return nadyn::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
