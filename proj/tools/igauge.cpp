#include <iostream>

#include "igauge/cli.hpp"

int main(int argc, char** argv) {
    return igauge::cli::main_entry(argc, argv, std::cout, std::cerr);
}
