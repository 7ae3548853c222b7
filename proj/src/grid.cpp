#include "vvs/grid.hpp"

#include <stdexcept>

namespace vvs {

Grid::Grid(int nx_, int ny_, double x1_lo, double x1_hi, double x2_lo, double x2_hi,
           bool periodic)
    : nx(nx_), ny(ny_), x1_min(x1_lo), x1_max(x1_hi), x2_min(x2_lo), x2_max(x2_hi),
      periodic_x1(periodic) {
    if (nx < 5 || ny < 5)
        throw std::invalid_argument("Grid: need at least 5 nodes per direction");
    if (!(x1_max > x1_min) || !(x2_max > x2_min))
        throw std::invalid_argument("Grid: domain bounds must be ordered");
}

int Grid::wrap(int i) const {
    if (!periodic_x1)
        return i;
    const int n = unique_nx();
    int r = i % n;
    return r < 0 ? r + n : r;
}

bool Grid::on_boundary(int i, int j) const {
    if (j == 0 || j == ny - 1)
        return true;
    if (!periodic_x1 && (i == 0 || i == nx - 1))
        return true;
    return false;
}

std::vector<BoundaryNode> boundary_loop(const Grid& g) {
    std::vector<BoundaryNode> loop;
    loop.reserve(2 * (g.nx + g.ny) - 4);
    const double h1 = g.h1(), h2 = g.h2();
    double sigma = 0.0;
    auto push = [&](int i, int j, double n1, double n2, int edge) {
        BoundaryNode b;
        b.i = i;
        b.j = j;
        b.sigma = sigma;
        b.normal = {n1, n2};
        b.tangent = {n2, -n1};
        b.edge = edge;
        loop.push_back(b);
    };
    // left edge, bottom to top
    for (int j = 0; j < g.ny; ++j) {
        push(0, j, -1.0, 0.0, 0);
        if (j + 1 < g.ny)
            sigma += h2;
    }
    // top edge, left to right (corner (0,ny-1) already emitted)
    for (int i = 1; i < g.nx; ++i) {
        sigma += h1;
        push(i, g.ny - 1, 0.0, 1.0, 1);
    }
    // right edge, top to bottom
    for (int j = g.ny - 2; j >= 0; --j) {
        sigma += h2;
        push(g.nx - 1, j, 1.0, 0.0, 2);
    }
    // bottom edge, right to left, stopping short of the start node
    for (int i = g.nx - 2; i >= 1; --i) {
        sigma += h1;
        push(i, 0, 0.0, -1.0, 3);
    }
    return loop;
}

} // namespace vvs
