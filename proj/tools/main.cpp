#include <iostream>
#include <string>
#include <vector>

#include "aptuple/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return aptuple::cli::run(args, std::cout, std::cerr);
}
