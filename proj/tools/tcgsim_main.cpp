#include <iostream>
#include <string>
#include <vector>

#include "tcg/runner.hpp"

int main(int argc, char** argv) {
    const std::vector<std::string> args(argv + 1, argv + argc);
    return tcg::run_cli(args, std::cout, std::cerr);
}
