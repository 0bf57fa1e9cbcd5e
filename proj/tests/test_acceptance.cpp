#include <cstdlib>
#include <iostream>

#include "halfsign/acceptance.hpp"

int main(int argc, char** argv) {
    halfsign::u64 seed = 0;
    if (argc > 1) seed = std::strtoull(argv[1], nullptr, 10);
    const auto summary = halfsign::accept::run_acceptance(std::cout, seed);
    return summary.hard_failures == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
