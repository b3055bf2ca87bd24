#include <iostream>
#include <vector>

#include "specq/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    auto [code, report] = specq::cli::run(args);
    std::cout << report << std::endl;
    return code;
}
