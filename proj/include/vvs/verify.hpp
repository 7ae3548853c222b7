#pragma once

#include <string>
#include <vector>

namespace vvs {

struct CriterionResult {
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

// One manufactured-solution run on the unit square: smooth prescribed
// coefficients, clamped quartic exact stream, forcing from the closed-form
// momentum balance. Errors are relative L2 against the exact fields.
struct MmsLevel {
    int n = 0;
    double stream_err = 0.0;
    double velocity_err = 0.0;
    int iterations = 0;
};
MmsLevel run_manufactured_level(int n, bool constant_mu);

// The acceptance suite, one result per criterion in fixed order. Writes the
// determinism artifacts under out_dir and prints one line per criterion
// unless quiet.
std::vector<CriterionResult> run_acceptance(const std::string& out_dir, bool quiet);

bool all_passed(const std::vector<CriterionResult>& results);

} // namespace vvs
