#pragma once

#include <vector>
#include <array>
#include <cstddef>

namespace vvs {

// Uniform tensor-product node grid on a rectangle. Nodes are stored row-major
// with the x2 index as the slow (row) index; node (i,j) sits at
// (x1_min + i*h1, x2_min + j*h2). With periodic_x1 the column nx-1 is
// identified with column 0, so operators wrap over the nx-1 unique columns
// while storage still holds nx*ny values (the duplicate column mirrors
// column 0).
struct Grid {
    int nx = 0;
    int ny = 0;
    double x1_min = 0.0, x1_max = 1.0;
    double x2_min = 0.0, x2_max = 1.0;
    bool periodic_x1 = false;

    Grid() = default;
    Grid(int nx_, int ny_, double x1_lo, double x1_hi, double x2_lo, double x2_hi,
         bool periodic = false);

    double h1() const { return (x1_max - x1_min) / (nx - 1); }
    double h2() const { return (x2_max - x2_min) / (ny - 1); }
    double x1(int i) const { return x1_min + i * h1(); }
    double x2(int j) const { return x2_min + j * h2(); }

    int node_count() const { return nx * ny; }
    // Number of distinct columns (periodic grids drop the duplicate).
    int unique_nx() const { return periodic_x1 ? nx - 1 : nx; }
    int unique_count() const { return unique_nx() * ny; }

    int index(int i, int j) const { return j * nx + i; }
    int unique_index(int i, int j) const { return j * unique_nx() + i; }
    // Wrap a column index into the unique range (periodic grids only).
    int wrap(int i) const;

    bool on_boundary(int i, int j) const;
    bool operator==(const Grid&) const = default;
};

// One node of the boundary traversal. The loop starts at (x1_min, x2_min) and
// runs with the tangent tau = (n2, -n1): up the left edge, right along the
// top, down the right edge, and back left along the bottom. Each boundary
// node appears exactly once; sigma is its cumulative arc length from the
// start.
struct BoundaryNode {
    int i = 0, j = 0;
    double sigma = 0.0;
    std::array<double, 2> normal{0.0, 0.0};   // outward unit normal of the edge
    std::array<double, 2> tangent{0.0, 0.0};  // tau = (n2, -n1)
    int edge = 0;                             // 0 left, 1 top, 2 right, 3 bottom
};

// Boundary nodes in traversal order; size is 2*(nx+ny) - 4.
std::vector<BoundaryNode> boundary_loop(const Grid& g);

} // namespace vvs
