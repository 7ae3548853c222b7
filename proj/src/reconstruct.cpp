#include "vvs/reconstruct.hpp"

#include "vvs/norms.hpp"
#include "vvs/operators.hpp"

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include <cmath>
#include <stdexcept>
#include <vector>

namespace vvs {

namespace {

// G = f - div(rho u x u) + div(mu S u), the field the pressure gradient must
// match for the momentum balance to hold.
VectorField gradient_target(const VectorField& u, const ScalarField& rho, const ScalarField& mu,
                            const VectorField& f) {
    const Grid& g = u.grid;
    TensorField conv(g);
    for (std::size_t n = 0; n < conv.t11.v.size(); ++n) {
        conv.t11.v[n] = rho.v[n] * u.c1.v[n] * u.c1.v[n];
        conv.t12.v[n] = rho.v[n] * u.c1.v[n] * u.c2.v[n];
        conv.t22.v[n] = rho.v[n] * u.c2.v[n] * u.c2.v[n];
    }
    VectorField conv_div = tensor_divergence(conv);

    TensorField stress = deformation(u);
    for (std::size_t n = 0; n < stress.t11.v.size(); ++n) {
        stress.t11.v[n] *= mu.v[n];
        stress.t12.v[n] *= mu.v[n];
        stress.t22.v[n] *= mu.v[n];
    }
    VectorField visc_div = tensor_divergence(stress);

    VectorField G(g);
    const bool has_f = !f.c1.v.empty();
    for (std::size_t n = 0; n < G.c1.v.size(); ++n) {
        G.c1.v[n] = (has_f ? f.c1.v[n] : 0.0) - conv_div.c1.v[n] + visc_div.c1.v[n];
        G.c2.v[n] = (has_f ? f.c2.v[n] : 0.0) - conv_div.c2.v[n] + visc_div.c2.v[n];
    }
    return G;
}

} // namespace

RecoveredState recover_state(const ScalarField& stream, const ClosureTable& eta,
                             const ClosureTable& b) {
    RecoveredState s;
    s.u = grad_perp(stream);
    s.rho = closure_eval(eta, stream);
    s.mu = closure_eval(b, s.rho);
    return s;
}

PressureField pressure_recover(const VectorField& u, const ScalarField& rho,
                               const ScalarField& mu, const VectorField& f) {
    const Grid& g = u.grid;
    VectorField G = gradient_target(u, rho, mu, f);

    double slope = 0.0;
    if (g.periodic_x1) {
        double acc = 0.0, area = 0.0;
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.unique_nx(); ++i) {
                double w = node_weight(g, i, j);
                acc += w * G.c1(i, j);
                area += w;
            }
        slope = acc / area;
    }

    const int N = g.unique_count();
    const double h1 = g.h1(), h2 = g.h2();
    std::vector<Eigen::Triplet<double>> trips;
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(N + 1);

    auto add_face = [&](int a, int b, double coef, double gf, double w) {
        trips.emplace_back(a, a, coef);
        trips.emplace_back(b, b, coef);
        trips.emplace_back(a, b, -coef);
        trips.emplace_back(b, a, -coef);
        rhs[b] += gf * w;
        rhs[a] -= gf * w;
    };

    for (int j = 0; j < g.ny; ++j) {
        const double wy = (j == 0 || j == g.ny - 1) ? 0.5 * h2 : h2;
        const int last = g.periodic_x1 ? g.unique_nx() : g.nx - 1;
        for (int i = 0; i < last; ++i) {
            int ip = g.periodic_x1 ? g.wrap(i + 1) : i + 1;
            double gf = 0.5 * (G.c1(i, j) + G.c1(ip, j)) - slope;
            add_face(g.unique_index(i, j), g.unique_index(ip, j), wy / h1, gf, wy);
        }
    }
    for (int i = 0; i < g.unique_nx(); ++i) {
        const double wx =
            (!g.periodic_x1 && (i == 0 || i == g.nx - 1)) ? 0.5 * h1 : h1;
        for (int j = 0; j < g.ny - 1; ++j) {
            double gf = 0.5 * (G.c2(i, j) + G.c2(i, j + 1));
            add_face(g.unique_index(i, j), g.unique_index(i, j + 1), wx / h2, gf, wx);
        }
    }

    // Mean-zero gauge over interior nodes through a multiplier row/column.
    for (int j = 1; j <= g.ny - 2; ++j) {
        const int lo = g.periodic_x1 ? 0 : 1;
        const int hi = g.periodic_x1 ? g.unique_nx() - 1 : g.nx - 2;
        for (int i = lo; i <= hi; ++i) {
            trips.emplace_back(N, g.unique_index(i, j), 1.0);
            trips.emplace_back(g.unique_index(i, j), N, 1.0);
        }
    }

    Eigen::SparseMatrix<double> A(N + 1, N + 1);
    A.setFromTriplets(trips.begin(), trips.end());
    A.makeCompressed();
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    lu.compute(A);
    if (lu.info() != Eigen::Success)
        throw std::runtime_error("pressure_recover: factorization failed");
    Eigen::VectorXd sol = lu.solve(rhs);
    if (!sol.head(N).allFinite())
        throw std::runtime_error("pressure_recover: non-finite pressure");

    PressureField p;
    p.secular_slope = slope;
    p.pi = ScalarField(g);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.unique_nx(); ++i)
            p.pi(i, j) = sol[g.unique_index(i, j)];
    p.pi.sync_periodic();

    ScalarField px = diff_x1(p.pi), py = diff_x2(p.pi);
    double acc = 0.0;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.unique_nx(); ++i) {
            double dx = px(i, j) + slope - G.c1(i, j);
            double dy = py(i, j) - G.c2(i, j);
            acc += node_weight(g, i, j) * (dx * dx + dy * dy);
        }
    p.compat = std::sqrt(acc);
    return p;
}

MomentumResidual momentum_residual(const VectorField& u, const ScalarField& rho,
                                   const ScalarField& mu, const PressureField& pressure,
                                   const VectorField& f) {
    const Grid& g = u.grid;
    VectorField G = gradient_target(u, rho, mu, f);
    ScalarField px = diff_x1(pressure.pi), py = diff_x2(pressure.pi);

    MomentumResidual r;
    double acc = 0.0;
    const int i_lo = g.periodic_x1 ? 0 : 2;
    const int i_hi = g.periodic_x1 ? g.unique_nx() - 1 : g.nx - 3;
    for (int j = 2; j <= g.ny - 3; ++j)
        for (int i = i_lo; i <= i_hi; ++i) {
            double r1 = px(i, j) + pressure.secular_slope - G.c1(i, j);
            double r2 = py(i, j) - G.c2(i, j);
            double mag = std::sqrt(r1 * r1 + r2 * r2);
            r.max = std::max(r.max, mag);
            acc += node_weight(g, i, j) * (r1 * r1 + r2 * r2);
        }
    r.l2 = std::sqrt(acc);
    return r;
}

} // namespace vvs
