#pragma once

#include "genus.hpp"

#include <string>
#include <vector>

namespace enrlat {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct VerifyOptions {
    GenusOptions genus;
    bool quick = false;  // restrict the heavy ranges (d <= 8)
};

// Runs the full verification suite (one result per criterion, in order).
std::vector<CheckResult> run_acceptance(const VerifyOptions& opts);

// Formats one "[PASS] name - detail" line.
std::string format_check_line(const CheckResult& r);

}  // namespace enrlat
