#include <iostream>

#include <isoframe/cli.hpp>

int main(int argc, char** argv) {
    return isoframe::run_cli(argc, argv, std::cout, std::cerr);
}
