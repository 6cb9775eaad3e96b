// Acceptance suite: runs every criterion at its stated tolerance and prints
// one pass/fail line each. Exits nonzero if any criterion fails.
// --fast runs the reduced grids.

#include <cstring>
#include <iostream>

#include "ffdist/verify.hpp"

int main(int argc, char** argv) {
    bool fast = false;
    for (int i = 1; i < argc; ++i)
        if (std::strcmp(argv[i], "--fast") == 0) fast = true;

    auto results = ffdist::verify::run_suite(fast, std::cout);
    const bool ok = ffdist::verify::all_passed(results);
    std::cout << (ok ? "acceptance: all criteria passed" : "acceptance: FAILURES above")
              << std::endl;
    return ok ? 0 : 1;
}
