#include <vector>

#include "geoprop/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return geoprop::run_cli(args);
}
