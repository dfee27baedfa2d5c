#include <iostream>
#include <string>
#include <vector>

#include "curvkit/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return curvkit::cli::run(args, std::cout, std::cerr);
}
