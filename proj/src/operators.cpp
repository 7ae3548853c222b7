#include "vvs/operators.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>
#include <vector>

namespace vvs {

namespace {

// Mirror an index about the range ends (ghost = reflected interior value).
int mirror(int k, int n) {
    if (k < 0)
        return -k;
    if (k > n - 1)
        return 2 * (n - 1) - k;
    return k;
}

int col_index(const Grid& g, int i) {
    return g.periodic_x1 ? g.wrap(i) : mirror(i, g.nx);
}

// Mirror/wrap lookup on the stored values (unique columns are authoritative).
double closed_at(const ScalarField& f, int i, int j) {
    const Grid& g = f.grid;
    return f(col_index(g, i), mirror(j, g.ny));
}

ScalarField mirror_d1(const ScalarField& f) {
    const Grid& g = f.grid;
    ScalarField d(g);
    const double s = 1.0 / (2.0 * g.h1());
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.unique_nx(); ++i)
            d(i, j) = (closed_at(f, i + 1, j) - closed_at(f, i - 1, j)) * s;
    d.sync_periodic();
    return d;
}

ScalarField mirror_d2(const ScalarField& f) {
    const Grid& g = f.grid;
    ScalarField d(g);
    const double s = 1.0 / (2.0 * g.h2());
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.unique_nx(); ++i)
            d(i, j) = (closed_at(f, i, j + 1) - closed_at(f, i, j - 1)) * s;
    d.sync_periodic();
    return d;
}

ScalarField mirror_d11(const ScalarField& f) {
    const Grid& g = f.grid;
    ScalarField d(g);
    const double s = 1.0 / (g.h1() * g.h1());
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.unique_nx(); ++i)
            d(i, j) = (closed_at(f, i + 1, j) - 2.0 * f(i, j) + closed_at(f, i - 1, j)) * s;
    d.sync_periodic();
    return d;
}

ScalarField mirror_d22(const ScalarField& f) {
    const Grid& g = f.grid;
    ScalarField d(g);
    const double s = 1.0 / (g.h2() * g.h2());
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.unique_nx(); ++i)
            d(i, j) = (closed_at(f, i, j + 1) - 2.0 * f(i, j) + closed_at(f, i, j - 1)) * s;
    d.sync_periodic();
    return d;
}

bool interior_node(const Grid& g, int i, int j) {
    if (j < 1 || j > g.ny - 2)
        return false;
    if (!g.periodic_x1 && (i < 1 || i > g.nx - 2))
        return false;
    return true;
}

// Trapezoid quadrature weight: boundary nodes own half a cell per closed direction.
double quad_weight(const Grid& g, int i, int j) {
    double w = g.h1() * g.h2();
    if (!g.periodic_x1 && (i == 0 || i == g.nx - 1))
        w *= 0.5;
    if (j == 0 || j == g.ny - 1)
        w *= 0.5;
    return w;
}

using Trip = Eigen::Triplet<double>;

Eigen::SparseMatrix<double> build_1d_op(const Grid& g, bool along_x1,
                                        const std::vector<std::pair<int, double>>& taps) {
    const int unx = g.unique_nx();
    const int N = unx * g.ny;
    std::vector<Trip> trips;
    trips.reserve(static_cast<size_t>(N) * taps.size());
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < unx; ++i) {
            int row = g.unique_index(i, j);
            for (auto [off, c] : taps) {
                int ci = i, cj = j;
                if (along_x1)
                    ci = col_index(g, i + off);
                else
                    cj = mirror(j + off, g.ny);
                trips.emplace_back(row, g.unique_index(ci, cj), c);
            }
        }
    Eigen::SparseMatrix<double> m(N, N);
    m.setFromTriplets(trips.begin(), trips.end());
    return m;
}

} // namespace

VectorField grad_perp(const ScalarField& phi) {
    VectorField u(phi.grid);
    u.c1 = diff_x2(phi);
    u.c2 = diff_x1(phi);
    for (double& x : u.c2.v)
        x = -x;
    return u;
}

VectorField clamped_grad_perp(const ScalarField& phi) {
    VectorField u(phi.grid);
    u.c1 = mirror_d2(phi);
    u.c2 = mirror_d1(phi);
    for (double& x : u.c2.v)
        x = -x;
    return u;
}

TensorField deformation(const VectorField& u) {
    TensorField t(u.grid);
    ScalarField d1u1 = diff_x1(u.c1), d2u1 = diff_x2(u.c1);
    ScalarField d1u2 = diff_x1(u.c2), d2u2 = diff_x2(u.c2);
    for (size_t n = 0; n < t.t11.v.size(); ++n) {
        t.t11.v[n] = 2.0 * d1u1.v[n];
        t.t12.v[n] = d2u1.v[n] + d1u2.v[n];
        t.t22.v[n] = 2.0 * d2u2.v[n];
    }
    return t;
}

ScalarField divergence(const VectorField& u) {
    ScalarField d = diff_x1(u.c1);
    ScalarField d2 = diff_x2(u.c2);
    for (size_t n = 0; n < d.v.size(); ++n)
        d.v[n] += d2.v[n];
    return d;
}

VectorField tensor_divergence(const TensorField& T) {
    VectorField d(T.grid);
    ScalarField a = diff_x1(T.t11), b = diff_x2(T.t12);
    ScalarField c = diff_x1(T.t12), e = diff_x2(T.t22);
    for (size_t n = 0; n < d.c1.v.size(); ++n) {
        d.c1.v[n] = a.v[n] + b.v[n];
        d.c2.v[n] = c.v[n] + e.v[n];
    }
    return d;
}

TensorField second_derivatives(const ScalarField& phi) {
    TensorField t(phi.grid);
    t.t11 = mirror_d11(phi);
    t.t22 = mirror_d22(phi);
    t.t12 = mirror_d1(mirror_d2(phi));
    return t;
}

ClampedDofs ClampedDofs::build(const Grid& g) {
    ClampedDofs d;
    d.grid = g;
    d.dof_of_node.assign(static_cast<size_t>(g.unique_count()), -1);
    const int i_lo = g.periodic_x1 ? 0 : 1;
    const int i_hi = g.periodic_x1 ? g.unique_nx() - 1 : g.nx - 2;
    for (int j = 1; j <= g.ny - 2; ++j)
        for (int i = i_lo; i <= i_hi; ++i) {
            d.dof_of_node[static_cast<size_t>(g.unique_index(i, j))] =
                static_cast<int>(d.node_of_dof.size());
            d.node_of_dof.push_back(g.unique_index(i, j));
        }
    return d;
}

ScalarField field_from_dofs(const ClampedDofs& dofs, const Eigen::VectorXd& x) {
    const Grid& g = dofs.grid;
    ScalarField f(g);
    for (int k = 0; k < dofs.count(); ++k) {
        int un = dofs.node_of_dof[static_cast<size_t>(k)];
        f(un % g.unique_nx(), un / g.unique_nx()) = x[k];
    }
    f.sync_periodic();
    return f;
}

Eigen::VectorXd dofs_from_field(const ClampedDofs& dofs, const ScalarField& phi) {
    const Grid& g = dofs.grid;
    Eigen::VectorXd x(dofs.count());
    for (int k = 0; k < dofs.count(); ++k) {
        int un = dofs.node_of_dof[static_cast<size_t>(k)];
        x[k] = phi(un % g.unique_nx(), un / g.unique_nx());
    }
    return x;
}

Eigen::SparseMatrix<double> op_d1(const Grid& g) {
    const double s = 1.0 / (2.0 * g.h1());
    return build_1d_op(g, true, {{-1, -s}, {1, s}});
}

Eigen::SparseMatrix<double> op_d2(const Grid& g) {
    const double s = 1.0 / (2.0 * g.h2());
    return build_1d_op(g, false, {{-1, -s}, {1, s}});
}

Eigen::SparseMatrix<double> op_d11(const Grid& g) {
    const double s = 1.0 / (g.h1() * g.h1());
    return build_1d_op(g, true, {{-1, s}, {0, -2.0 * s}, {1, s}});
}

Eigen::SparseMatrix<double> op_d22(const Grid& g) {
    const double s = 1.0 / (g.h2() * g.h2());
    return build_1d_op(g, false, {{-1, s}, {0, -2.0 * s}, {1, s}});
}

Eigen::SparseMatrix<double> clamped_selection(const ClampedDofs& dofs) {
    std::vector<Trip> trips;
    trips.reserve(static_cast<size_t>(dofs.count()));
    for (int k = 0; k < dofs.count(); ++k)
        trips.emplace_back(dofs.node_of_dof[static_cast<size_t>(k)], k, 1.0);
    Eigen::SparseMatrix<double> r(dofs.grid.unique_count(), dofs.count());
    r.setFromTriplets(trips.begin(), trips.end());
    return r;
}

EnergyOperator assemble_energy_operator(const ScalarField& mu, const ClampedDofs& dofs) {
    const Grid& g = dofs.grid;
    if (!(mu.grid == g))
        throw std::invalid_argument("assemble_energy_operator: grid mismatch");
    if (!(mu.min_value() > 0.0))
        throw std::invalid_argument("assemble_energy_operator: viscosity must be positive");

    EnergyOperator op;
    op.dofs = dofs;
    Eigen::SparseMatrix<double> R = clamped_selection(dofs);
    Eigen::SparseMatrix<double> S = op_d22(g) - op_d11(g);
    Eigen::SparseMatrix<double> C = (op_d1(g) * op_d2(g)).pruned();
    op.S_free = S * R;
    op.C_free = C * R;

    op.mdiag.resize(g.unique_count());
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.unique_nx(); ++i)
            op.mdiag[g.unique_index(i, j)] = mu(i, j) * quad_weight(g, i, j);

    Eigen::SparseMatrix<double> Ms = op.mdiag.asDiagonal() * op.S_free;
    Eigen::SparseMatrix<double> Mc = op.mdiag.asDiagonal() * op.C_free;
    op.matrix =
        (Eigen::SparseMatrix<double>(op.S_free.transpose()) * Ms +
         4.0 * (Eigen::SparseMatrix<double>(op.C_free.transpose()) * Mc))
            .pruned();
    return op;
}

double energy_product(const ScalarField& mu, const ScalarField& phi, const ScalarField& psi) {
    const Grid& g = phi.grid;
    ScalarField s_phi = mirror_d22(phi), s_psi = mirror_d22(psi);
    {
        ScalarField a = mirror_d11(phi), b = mirror_d11(psi);
        for (size_t n = 0; n < s_phi.v.size(); ++n) {
            s_phi.v[n] -= a.v[n];
            s_psi.v[n] -= b.v[n];
        }
    }
    ScalarField c_phi = mirror_d1(mirror_d2(phi));
    ScalarField c_psi = mirror_d1(mirror_d2(psi));
    double acc = 0.0;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.unique_nx(); ++i)
            acc += 0.5 * mu(i, j) * quad_weight(g, i, j) *
                   (s_phi(i, j) * s_psi(i, j) + 4.0 * c_phi(i, j) * c_psi(i, j));
    return acc;
}

double laplacian_norm_clamped(const ScalarField& phi) {
    ScalarField one(phi.grid, 1.0);
    return std::sqrt(2.0 * energy_product(one, phi, phi));
}

Eigen::SparseMatrix<double> assemble_convection(const ScalarField& rho, const VectorField& w,
                                                const ClampedDofs& dofs) {
    const Grid& g = dofs.grid;
    Eigen::SparseMatrix<double> R = clamped_selection(dofs);
    Eigen::SparseMatrix<double> D1 = op_d1(g), D2 = op_d2(g);
    Eigen::SparseMatrix<double> P[2] = {D2, Eigen::SparseMatrix<double>(-D1)};
    Eigen::SparseMatrix<double> Dj[2] = {D1, D2};

    const double quad = g.h1() * g.h2();
    Eigen::VectorXd wj[2] = {Eigen::VectorXd::Zero(g.unique_count()),
                             Eigen::VectorXd::Zero(g.unique_count())};
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.unique_nx(); ++i) {
            if (!interior_node(g, i, j))
                continue;
            double c = rho(i, j) * quad;
            wj[0][g.unique_index(i, j)] = c * w.c1(i, j);
            wj[1][g.unique_index(i, j)] = c * w.c2(i, j);
        }

    Eigen::SparseMatrix<double> K(dofs.count(), dofs.count());
    for (int m = 0; m < 2; ++m) {
        Eigen::SparseMatrix<double> Pm_free = P[m] * R;
        for (int d = 0; d < 2; ++d) {
            Eigen::SparseMatrix<double> Q = (Dj[d] * P[m] * R).pruned();
            Eigen::SparseMatrix<double> scaled = wj[d].asDiagonal() * Pm_free;
            K += Eigen::SparseMatrix<double>(Q.transpose()) * scaled;
        }
    }
    return K.pruned();
}

double trilinear(const ScalarField& rho, const VectorField& w, const ScalarField& phi,
                 const ScalarField& psi) {
    const Grid& g = phi.grid;
    ScalarField p_phi[2] = {mirror_d2(phi), mirror_d1(phi)};
    for (double& x : p_phi[1].v)
        x = -x;
    ScalarField p_psi[2] = {mirror_d2(psi), mirror_d1(psi)};
    for (double& x : p_psi[1].v)
        x = -x;

    const double quad = g.h1() * g.h2();
    double acc = 0.0;
    for (int m = 0; m < 2; ++m) {
        ScalarField a1 = mirror_d1(p_psi[m]);
        ScalarField a2 = mirror_d2(p_psi[m]);
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.unique_nx(); ++i) {
                if (!interior_node(g, i, j))
                    continue;
                acc += rho(i, j) * quad *
                       (w.c1(i, j) * a1(i, j) + w.c2(i, j) * a2(i, j)) * p_phi[m](i, j);
            }
    }
    return acc;
}

void extended_second_ops(const ExtendedField& f, ScalarField& s_out, ScalarField& c_out) {
    const Grid& g = f.grid;
    s_out = ScalarField(g);
    c_out = ScalarField(g);
    const double i11 = 1.0 / (g.h1() * g.h1());
    const double i22 = 1.0 / (g.h2() * g.h2());
    const double i12 = 1.0 / (4.0 * g.h1() * g.h2());
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.unique_nx(); ++i) {
            double d11 = (f.at(i + 1, j) - 2.0 * f.at(i, j) + f.at(i - 1, j)) * i11;
            double d22 = (f.at(i, j + 1) - 2.0 * f.at(i, j) + f.at(i, j - 1)) * i22;
            s_out(i, j) = d22 - d11;
            c_out(i, j) = (f.at(i + 1, j + 1) - f.at(i + 1, j - 1) - f.at(i - 1, j + 1) +
                           f.at(i - 1, j - 1)) *
                          i12;
        }
    s_out.sync_periodic();
    c_out.sync_periodic();
}

VectorField extended_grad_perp(const ExtendedField& f) {
    const Grid& g = f.grid;
    VectorField u(g);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.unique_nx(); ++i) {
            u.c1(i, j) = (f.at(i, j + 1) - f.at(i, j - 1)) / (2.0 * g.h2());
            u.c2(i, j) = -(f.at(i + 1, j) - f.at(i - 1, j)) / (2.0 * g.h1());
        }
    u.sync_periodic();
    return u;
}

void write_matrix_market(const Eigen::SparseMatrix<double>& m, const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("write_matrix_market: cannot open " + path);
    out << "%%MatrixMarket matrix coordinate real general\n";
    out << m.rows() << " " << m.cols() << " " << m.nonZeros() << "\n";
    char buf[64];
    for (int k = 0; k < m.outerSize(); ++k)
        for (Eigen::SparseMatrix<double>::InnerIterator it(m, k); it; ++it) {
            std::snprintf(buf, sizeof buf, "%ld %ld %.17g\n", static_cast<long>(it.row() + 1),
                          static_cast<long>(it.col() + 1), it.value());
            out << buf;
        }
}

} // namespace vvs
