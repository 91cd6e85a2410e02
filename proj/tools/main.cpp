#include <iostream>
#include <string>
#include <vector>

#include "snnmap/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return snnmap::cli::run_cli(args, std::cout, std::cerr);
}
