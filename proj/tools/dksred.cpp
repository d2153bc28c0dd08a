#include <iostream>

#include "dksred/cli.hpp"

int main(int argc, char** argv) {
    return dksred::cli::run_command_line(argc, argv, std::cout, std::cerr);
}
