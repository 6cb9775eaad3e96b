#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ffdist::verify {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    double seconds = 0;
    std::string detail;  // counts checked, observed extremes, first failures
};

// Runs the acceptance criteria and prints one pass/fail line per criterion
// as it completes. fast = reduced grids (target under a minute); full grids
// otherwise.
std::vector<CriterionResult> run_suite(bool fast, std::ostream& progress);

bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace ffdist::verify
