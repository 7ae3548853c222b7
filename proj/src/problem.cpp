#include "vvs/problem.hpp"

#include <algorithm>
#include <stdexcept>

namespace vvs {

double ProblemSpec::delta() const {
    if (params.delta > 0.0) return params.delta;
    const double ext1 = grid.x1_max - grid.x1_min;
    const double ext2 = grid.x2_max - grid.x2_min;
    return 0.1 * std::min(ext1, ext2);
}

double ProblemSpec::eps_mollify() const {
    if (params.eps_mollify >= 0.0) return params.eps_mollify;
    return 2.0 * std::min(grid.h1(), grid.h2());
}

void ProblemSpec::validate() const {
    if (grid.nx < 5 || grid.ny < 5)
        throw std::invalid_argument("grid needs at least 5 nodes per direction");
    if (grid.x1_max <= grid.x1_min || grid.x2_max <= grid.x2_min)
        throw std::invalid_argument("grid extents must be positive");
    const std::size_t nloop = 2 * (static_cast<std::size_t>(grid.nx) + grid.ny) - 4;
    if (u0_samples.size() != nloop)
        throw std::invalid_argument("boundary velocity sample count does not match loop size");
    if (!force.c1.v.empty() &&
        force.c1.v.size() != static_cast<std::size_t>(grid.node_count()))
        throw std::invalid_argument("force field size does not match grid");
    if (eta.breakpoints.empty()) throw std::invalid_argument("density closure is empty");
    if (b.breakpoints.empty()) throw std::invalid_argument("viscosity closure is empty");
    if (b.min_value() <= 0.0)
        throw std::invalid_argument("viscosity closure must be strictly positive");
    if (params.omega <= 0.0 || params.omega > 1.0)
        throw std::invalid_argument("relaxation weight must lie in (0,1]");
    if (params.max_iter < 1) throw std::invalid_argument("max_iter must be at least 1");
}

} // namespace vvs
