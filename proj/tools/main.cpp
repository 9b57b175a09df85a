#include <iostream>
#include <string>
#include <vector>

#include "dedekind/cli.hpp"

int main(int argc, char** argv) {
    return dedekind::cli::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout,
                                  std::cerr);
}
