#include "vvs/closure.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace vvs {

ClosureTable::ClosureTable(std::vector<double> bp, std::vector<double> val)
    : breakpoints(std::move(bp)), values(std::move(val)) {
    if (breakpoints.size() != values.size() || breakpoints.empty())
        throw std::invalid_argument("ClosureTable: breakpoints/values size mismatch");
    for (size_t k = 0; k + 1 < breakpoints.size(); ++k)
        if (!(breakpoints[k] < breakpoints[k + 1]))
            throw std::invalid_argument("ClosureTable: breakpoints must be strictly increasing");
    for (double y : values)
        if (!std::isfinite(y))
            throw std::invalid_argument("ClosureTable: non-finite value");
}

ClosureTable ClosureTable::constant(double c) { return ClosureTable({0.0}, {c}); }

ClosureTable ClosureTable::step(double level_lo, double level_hi, double at, double width) {
    if (!(width > 0.0))
        throw std::invalid_argument("ClosureTable::step: width must be positive");
    return ClosureTable({at - 0.5 * width, at + 0.5 * width}, {level_lo, level_hi});
}

double ClosureTable::eval(double y) const {
    if (y <= breakpoints.front())
        return values.front();
    if (y >= breakpoints.back())
        return values.back();
    auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), y);
    size_t k = static_cast<size_t>(it - breakpoints.begin()) - 1;
    double t = (y - breakpoints[k]) / (breakpoints[k + 1] - breakpoints[k]);
    return values[k] + t * (values[k + 1] - values[k]);
}

double ClosureTable::min_value() const { return *std::min_element(values.begin(), values.end()); }

double ClosureTable::max_value() const { return *std::max_element(values.begin(), values.end()); }

double ClosureTable::lipschitz() const {
    double L = 0.0;
    for (size_t k = 0; k + 1 < breakpoints.size(); ++k)
        L = std::max(L, std::abs(values[k + 1] - values[k]) / (breakpoints[k + 1] - breakpoints[k]));
    return L;
}

double ClosureTable::inverse(double value) const {
    if (values.size() == 1) {
        if (values[0] == value)
            return breakpoints[0];
        throw std::invalid_argument("ClosureTable::inverse: value not attained");
    }
    const bool increasing = values.back() > values.front();
    for (size_t k = 0; k + 1 < values.size(); ++k) {
        double a = values[k], b = values[k + 1];
        if (increasing ? !(b >= a) : !(b <= a))
            throw std::invalid_argument("ClosureTable::inverse: table not monotone");
        double lo = std::min(a, b), hi = std::max(a, b);
        if (value >= lo && value <= hi) {
            if (a == b)
                return breakpoints[k];
            double t = (value - a) / (b - a);
            return breakpoints[k] + t * (breakpoints[k + 1] - breakpoints[k]);
        }
    }
    if (value == values.front())
        return breakpoints.front();
    if (value == values.back())
        return breakpoints.back();
    throw std::invalid_argument("ClosureTable::inverse: value outside table range");
}

ClosureTable ClosureTable::shifted(double s) const {
    ClosureTable t = *this;
    for (double& bp : t.breakpoints)
        bp += s;
    return t;
}

ScalarField closure_eval(const ClosureTable& table, const ScalarField& input) {
    ScalarField out(input.grid);
    for (size_t n = 0; n < input.v.size(); ++n)
        out.v[n] = table.eval(input.v[n]);
    return out;
}

} // namespace vvs
