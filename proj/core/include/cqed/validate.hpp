// validate.hpp — Cross-module consistency checks runnable from the CLI:
// each check pairs two independent computational routes to the same quantity.

#pragma once

#include <string>
#include <vector>

#include "cqed/params.hpp"

namespace cqed::validate {

struct CheckResult {
    std::string name;
    bool pass = false;
    double value = 0.0;   // measured discrepancy or quantity
    double bound = 0.0;   // acceptance bound applied
    std::string detail;
};

// Runs the suite at the given parameters (mode counts kept moderate so the
// whole set completes in a few seconds).
std::vector<CheckResult> run_validation(const CircuitParams& p);

} // namespace cqed::validate
