#include <iostream>

#include "common.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return pacf::cli::run(args, std::cout, std::cerr);
}
