#pragma once

#include "vvs/field.hpp"

#include <vector>

namespace vvs {

// Piecewise-linear lookup table for the material closures (density from
// stream value, viscosity from density). Evaluation clamps to the end values
// outside the breakpoint range, so the table is globally Lipschitz and its
// range stays inside [declared min, declared max].
struct ClosureTable {
    std::vector<double> breakpoints;  // strictly increasing
    std::vector<double> values;       // same length, all finite

    ClosureTable() = default;
    ClosureTable(std::vector<double> bp, std::vector<double> val);

    static ClosureTable constant(double c);
    // Two-level table ramping from level_lo to level_hi across
    // [at - width/2, at + width/2]. Steps from the symmetric examples are
    // encoded this way; width > 0 keeps the closure continuous.
    static ClosureTable step(double level_lo, double level_hi, double at, double width);

    double eval(double y) const;
    double min_value() const;
    double max_value() const;
    double lipschitz() const;

    // Preimage of a value under a strictly monotone table (used to read off
    // density levels from the viscosity table). Throws if not monotone or not
    // attained.
    double inverse(double value) const;

    // Shift the input coordinate: table'(y) = table(y - s).
    ClosureTable shifted(double s) const;
};

// Nodewise application of a table to a field.
ScalarField closure_eval(const ClosureTable& table, const ScalarField& input);

} // namespace vvs
