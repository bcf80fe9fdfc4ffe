#include <iostream>

#include "modlab/cli/dispatch.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return modlab::cli::dispatch(args, std::cout, std::cerr).exit_code;
}
