#pragma once

#include "vvs/field.hpp"
#include "vvs/norms.hpp"

#include <Eigen/Sparse>

#include <string>

namespace vvs {

// ---------------------------------------------------------------------------
// Pointwise differential operators.
//
// Two stencil conventions coexist. General field operations (grad_perp,
// deformation, divergence) use central differences with second-order
// one-sided closures on non-periodic edges, so linear fields differentiate
// exactly everywhere. Operations feeding the clamped fourth-order solve
// (second_derivatives and the assemblies below) close out-of-range stencils
// by mirror reflection about the boundary node, which realizes the zero
// normal-derivative condition of the clamped test space.
// ---------------------------------------------------------------------------

// u = (d2 phi, -d1 phi); divergence-free by construction at interior nodes.
VectorField grad_perp(const ScalarField& phi);

// Same rotation but with the mirror-ghost closure, for fields living in the
// clamped space: both components vanish identically on non-periodic walls.
VectorField clamped_grad_perp(const ScalarField& phi);

// Symmetric gradient S(u) = grad u + (grad u)^T.
TensorField deformation(const VectorField& u);

ScalarField divergence(const VectorField& u);
VectorField tensor_divergence(const TensorField& T);

// (phi11, phi12, phi22) with mirror-ghost closure; phi12 is the composition
// of central first differences (wide 4-point cross).
TensorField second_derivatives(const ScalarField& phi);

// ---------------------------------------------------------------------------
// Clamped degrees of freedom: interior nodes of a non-periodic rectangle, or
// all unique columns of the interior rows when periodic in x1. Boundary node
// values are fixed to zero; ghosts mirror the interior.
// ---------------------------------------------------------------------------
struct ClampedDofs {
    Grid grid;
    std::vector<int> node_of_dof;    // dof -> unique node index
    std::vector<int> dof_of_node;    // unique node index -> dof or -1

    static ClampedDofs build(const Grid& g);
    int count() const { return static_cast<int>(node_of_dof.size()); }
};

ScalarField field_from_dofs(const ClampedDofs& dofs, const Eigen::VectorXd& x);
Eigen::VectorXd dofs_from_field(const ClampedDofs& dofs, const ScalarField& phi);

// Sparse difference operators on the unique-node space (row/col dimension
// unique_nx * ny) with mirror/wrap closures. Used by the assemblies and by
// callers that need consistent compositions.
Eigen::SparseMatrix<double> op_d1(const Grid& g);
Eigen::SparseMatrix<double> op_d2(const Grid& g);
Eigen::SparseMatrix<double> op_d11(const Grid& g);
Eigen::SparseMatrix<double> op_d22(const Grid& g);
// Selection of free columns: unique-node x dof.
Eigen::SparseMatrix<double> clamped_selection(const ClampedDofs& dofs);

// ---------------------------------------------------------------------------
// Weak form of the fourth-order operator, assembled as A^T M A with
// A = [d22 - d11; 2 d12] and M = diag(mu h1 h2) over all unique nodes.
// Symmetric positive definite on the clamped space by construction; with
// mu constant it reproduces the biharmonic weak form (phi^T E psi matches
// the quadrature of mu Delta^2 applied termwise), and in general
// phi^T E psi = 2 * energy_product(mu, phi, psi).
// ---------------------------------------------------------------------------
struct EnergyOperator {
    ClampedDofs dofs;
    Eigen::SparseMatrix<double> S_free;   // (d22 - d11) restricted to free columns
    Eigen::SparseMatrix<double> C_free;   // d1 d2 restricted to free columns
    Eigen::VectorXd mdiag;                // mu times the trapezoid weight per unique node
    Eigen::SparseMatrix<double> matrix;   // dof x dof
};

// Requires min(mu) > 0.
EnergyOperator assemble_energy_operator(const ScalarField& mu, const ClampedDofs& dofs);

// <phi, psi> = (1/2) sum mu [ (d22-d11)phi (d22-d11)psi + (2 d12 phi)(2 d12 psi) ] h1 h2.
double energy_product(const ScalarField& mu, const ScalarField& phi, const ScalarField& psi);

// Discrete Laplacian norm of a clamped field, sqrt(2 * <phi,phi>_{mu=1}).
// This is the (d22-d11, 2 d12) representation of ||Delta phi||, which agrees
// with the integral of (Delta phi)^2 on the clamped space.
double laplacian_norm_clamped(const ScalarField& phi);

// ---------------------------------------------------------------------------
// Oseen convection. The frozen advecting field w differentiates the test
// function: (K phi, psi) = sum_interior rho * w . [ (grad_perp phi . grad)
// applied to grad_perp psi pairing ] * h1 h2, i.e. the trilinear form below
// with the unknown in the transported slot.
// ---------------------------------------------------------------------------
Eigen::SparseMatrix<double> assemble_convection(const ScalarField& rho, const VectorField& w,
                                                const ClampedDofs& dofs);

// trilinear(rho, w, phi, psi) = sum_interior rho * sum_m (w . grad_h)(grad_perp psi)_m
// * (grad_perp phi)_m * h1 h2, mirror-ghost closures throughout.
double trilinear(const ScalarField& rho, const VectorField& w, const ScalarField& phi,
                 const ScalarField& psi);

// ---------------------------------------------------------------------------
// Node values with one ghost ring, for boundary data that carries nonzero
// derivatives across the wall (the lift). Index range [-1, nx] x [-1, ny].
// ---------------------------------------------------------------------------
struct ExtendedField {
    Grid grid;
    std::vector<double> v;

    explicit ExtendedField(const Grid& g)
        : grid(g), v(static_cast<size_t>((g.nx + 2) * (g.ny + 2)), 0.0) {}
    double& at(int i, int j) { return v[static_cast<size_t>((j + 1) * (grid.nx + 2) + i + 1)]; }
    double at(int i, int j) const {
        return v[static_cast<size_t>((j + 1) * (grid.nx + 2) + i + 1)];
    }
};

// Honest central stencils on the extended values (no mirror closure):
// returns (d22 - d11) and d1 d2 images on unique nodes.
void extended_second_ops(const ExtendedField& f, ScalarField& s_out, ScalarField& c_out);
VectorField extended_grad_perp(const ExtendedField& f);

void write_matrix_market(const Eigen::SparseMatrix<double>& m, const std::string& path);

} // namespace vvs
