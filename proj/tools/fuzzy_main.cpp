#include <iostream>
#include <string>
#include <vector>

#include "fuzzy/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return fuzzy::run_cli(args, std::cout, std::cerr);
}
