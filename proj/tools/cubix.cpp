#include <cubix/cli.hpp>

#include <exception>
#include <iostream>

int main(int argc, char** argv) {
    try {
        return cubix::cli::run({argv + 1, argv + argc}, std::cout, std::cerr);
    } catch (const std::exception& e) {
        std::cerr << "cubix: internal error: " << e.what() << '\n';
        return 3;
    }
}
