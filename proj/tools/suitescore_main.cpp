#include <iostream>
#include <string>
#include <vector>

#include "suitescore/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return suitescore::run_cli(args, std::cout, std::cerr);
}
