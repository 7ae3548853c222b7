#include "vvs/field.hpp"

#include <algorithm>
#include <cmath>

namespace vvs {

void ScalarField::sync_periodic() {
    if (!grid.periodic_x1)
        return;
    for (int j = 0; j < grid.ny; ++j)
        (*this)(grid.nx - 1, j) = (*this)(0, j);
}

void ScalarField::fill_from(const std::function<double(double, double)>& f) {
    for (int j = 0; j < grid.ny; ++j)
        for (int i = 0; i < grid.nx; ++i)
            (*this)(i, j) = f(grid.x1(i), grid.x2(j));
    sync_periodic();
}

double ScalarField::min_value() const { return *std::min_element(v.begin(), v.end()); }

double ScalarField::max_value() const { return *std::max_element(v.begin(), v.end()); }

bool ScalarField::all_finite() const {
    for (double x : v)
        if (!std::isfinite(x))
            return false;
    return true;
}

} // namespace vvs
