#include <iostream>
#include <string>
#include <vector>

#include "emovec/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return emovec::run_cli(args, std::cout, std::cerr);
}
