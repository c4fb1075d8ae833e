#include <iostream>
#include <string>
#include <vector>

#include "quadfix/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return quadfix::run_cli(args, std::cout, std::cerr);
}
