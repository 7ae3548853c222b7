#pragma once

#include "vvs/grid.hpp"

#include <functional>
#include <vector>

namespace vvs {

// Nodal scalar samples over a Grid. One value per node; on periodic grids the
// duplicated column nx-1 is kept equal to column 0 (sync_periodic restores the
// invariant after direct writes).
struct ScalarField {
    Grid grid;
    std::vector<double> v;

    ScalarField() = default;
    explicit ScalarField(const Grid& g, double fill = 0.0)
        : grid(g), v(static_cast<size_t>(g.node_count()), fill) {}

    double& operator()(int i, int j) { return v[static_cast<size_t>(grid.index(i, j))]; }
    double operator()(int i, int j) const { return v[static_cast<size_t>(grid.index(i, j))]; }

    void sync_periodic();
    void fill_from(const std::function<double(double, double)>& f);

    double min_value() const;
    double max_value() const;
    bool all_finite() const;
};

struct VectorField {
    Grid grid;
    ScalarField c1, c2;

    VectorField() = default;
    explicit VectorField(const Grid& g) : grid(g), c1(g), c2(g) {}
    void sync_periodic() { c1.sync_periodic(); c2.sync_periodic(); }
    bool all_finite() const { return c1.all_finite() && c2.all_finite(); }
};

// Symmetric 2x2 tensor samples (t12 stores the shared off-diagonal).
struct TensorField {
    Grid grid;
    ScalarField t11, t12, t22;

    TensorField() = default;
    explicit TensorField(const Grid& g) : grid(g), t11(g), t12(g), t22(g) {}
};

} // namespace vvs
