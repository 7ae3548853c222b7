// Runs the full acceptance suite and reports one pass/fail line per
// criterion. Exits nonzero if any criterion fails, so the test harness
// surfaces the printed details.
#include "vvs/verify.hpp"

#include <string>

int main(int argc, char** argv) {
    std::string out_dir = argc > 1 ? argv[1] : ".";
    std::vector<vvs::CriterionResult> results = vvs::run_acceptance(out_dir, false);
    return vvs::all_passed(results) ? 0 : 1;
}
