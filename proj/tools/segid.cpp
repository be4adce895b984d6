#include <iostream>

#include "segid/commands.hpp"

int main(int argc, char** argv) {
    try {
        return segid::cli::run(argc, argv, std::cout, std::cerr);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
