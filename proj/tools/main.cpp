#include <iostream>
#include <string>
#include <vector>

#include "efimovkit_cli/app.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return efimovkit::cli::run(args, std::cout, std::cerr);
}
