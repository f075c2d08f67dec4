#include <iostream>
#include <string>
#include <vector>

#include "distmod/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return distmod::cli::main_entry(args, std::cout, std::cerr);
}
