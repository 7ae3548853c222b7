#include "vvs/norms.hpp"

#include <cmath>

namespace vvs {

double node_weight(const Grid& g, int i, int j) {
    double w1;
    if (g.periodic_x1)
        w1 = (i == g.nx - 1) ? 0.0 : g.h1();
    else
        w1 = (i == 0 || i == g.nx - 1) ? 0.5 * g.h1() : g.h1();
    double w2 = (j == 0 || j == g.ny - 1) ? 0.5 * g.h2() : g.h2();
    return w1 * w2;
}

ScalarField diff_x1(const ScalarField& phi) {
    const Grid& g = phi.grid;
    ScalarField d(g);
    const double h = g.h1();
    if (g.periodic_x1) {
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.unique_nx(); ++i)
                d(i, j) = (phi(g.wrap(i + 1), j) - phi(g.wrap(i - 1), j)) / (2.0 * h);
        d.sync_periodic();
        return d;
    }
    for (int j = 0; j < g.ny; ++j) {
        d(0, j) = (-3.0 * phi(0, j) + 4.0 * phi(1, j) - phi(2, j)) / (2.0 * h);
        for (int i = 1; i < g.nx - 1; ++i)
            d(i, j) = (phi(i + 1, j) - phi(i - 1, j)) / (2.0 * h);
        d(g.nx - 1, j) =
            (3.0 * phi(g.nx - 1, j) - 4.0 * phi(g.nx - 2, j) + phi(g.nx - 3, j)) / (2.0 * h);
    }
    return d;
}

ScalarField diff_x2(const ScalarField& phi) {
    const Grid& g = phi.grid;
    ScalarField d(g);
    const double h = g.h2();
    for (int i = 0; i < g.nx; ++i) {
        d(i, 0) = (-3.0 * phi(i, 0) + 4.0 * phi(i, 1) - phi(i, 2)) / (2.0 * h);
        for (int j = 1; j < g.ny - 1; ++j)
            d(i, j) = (phi(i, j + 1) - phi(i, j - 1)) / (2.0 * h);
        d(i, g.ny - 1) =
            (3.0 * phi(i, g.ny - 1) - 4.0 * phi(i, g.ny - 2) + phi(i, g.ny - 3)) / (2.0 * h);
    }
    return d;
}

namespace {

// Pure second differences; edge rows reuse the first interior stencil (the
// seminorm needs boundedness, not edge-order accuracy).
ScalarField d2_x1(const ScalarField& phi) {
    const Grid& g = phi.grid;
    ScalarField d(g);
    const double h2 = g.h1() * g.h1();
    if (g.periodic_x1) {
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.unique_nx(); ++i)
                d(i, j) = (phi(g.wrap(i + 1), j) - 2.0 * phi(i, j) + phi(g.wrap(i - 1), j)) / h2;
        d.sync_periodic();
        return d;
    }
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 1; i < g.nx - 1; ++i)
            d(i, j) = (phi(i + 1, j) - 2.0 * phi(i, j) + phi(i - 1, j)) / h2;
        d(0, j) = (phi(0, j) - 2.0 * phi(1, j) + phi(2, j)) / h2;
        d(g.nx - 1, j) = (phi(g.nx - 1, j) - 2.0 * phi(g.nx - 2, j) + phi(g.nx - 3, j)) / h2;
    }
    return d;
}

ScalarField d2_x2(const ScalarField& phi) {
    const Grid& g = phi.grid;
    ScalarField d(g);
    const double h2 = g.h2() * g.h2();
    for (int i = 0; i < g.nx; ++i) {
        for (int j = 1; j < g.ny - 1; ++j)
            d(i, j) = (phi(i, j + 1) - 2.0 * phi(i, j) + phi(i, j - 1)) / h2;
        d(i, 0) = (phi(i, 0) - 2.0 * phi(i, 1) + phi(i, 2)) / h2;
        d(i, g.ny - 1) = (phi(i, g.ny - 1) - 2.0 * phi(i, g.ny - 2) + phi(i, g.ny - 3)) / h2;
    }
    return d;
}

} // namespace

Norms discrete_norms(const ScalarField& phi) {
    const Grid& g = phi.grid;
    Norms n;
    ScalarField d1 = diff_x1(phi), d2 = diff_x2(phi);
    ScalarField d11 = d2_x1(phi), d22 = d2_x2(phi), d12 = diff_x1(diff_x2(phi));
    double s0 = 0.0, s1 = 0.0, s2 = 0.0;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            double w = node_weight(g, i, j);
            s0 += w * phi(i, j) * phi(i, j);
            s1 += w * (d1(i, j) * d1(i, j) + d2(i, j) * d2(i, j));
            s2 += w * (d11(i, j) * d11(i, j) + 2.0 * d12(i, j) * d12(i, j) +
                       d22(i, j) * d22(i, j));
        }
    n.l2 = std::sqrt(s0);
    n.h1_semi = std::sqrt(s1);
    n.h2_semi = std::sqrt(s2);
    return n;
}

double l2_norm(const ScalarField& phi) {
    const Grid& g = phi.grid;
    double s = 0.0;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            s += node_weight(g, i, j) * phi(i, j) * phi(i, j);
    return std::sqrt(s);
}

double l2_norm(const VectorField& u) {
    double a = l2_norm(u.c1), b = l2_norm(u.c2);
    return std::sqrt(a * a + b * b);
}

double h2_norm(const ScalarField& phi) {
    Norms n = discrete_norms(phi);
    return std::sqrt(n.l2 * n.l2 + n.h1_semi * n.h1_semi + n.h2_semi * n.h2_semi);
}

} // namespace vvs
