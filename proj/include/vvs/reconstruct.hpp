#pragma once

#include "vvs/closure.hpp"
#include "vvs/field.hpp"

namespace vvs {

// ---------------------------------------------------------------------------
// Physical fields recovered from a stream function, and the discrete momentum
// balance they satisfy. All derivatives use the general one-sided/central
// stencils, so the operations apply to any stream field, not just solver
// iterates.
// ---------------------------------------------------------------------------

struct RecoveredState {
    VectorField u;
    ScalarField rho;
    ScalarField mu;
};

// u = grad_perp(stream), rho = eta(stream), mu = b(rho), all nodewise.
RecoveredState recover_state(const ScalarField& stream, const ClosureTable& eta,
                             const ClosureTable& b);

struct PressureField {
    ScalarField pi;       // single-valued part, zero mean over interior nodes
    double secular_slope; // coefficient of x1 on periodic grids, else 0
    double compat;        // L2 norm of grad Pi + slope e1 - G (curl-free defect)
};

// Least-squares potential of G = f - div(rho u x u) + div(mu S u): solves the
// weak Neumann Poisson problem sum_faces grad Pi . grad q = sum_faces G . grad q
// with a zero-mean gauge. On periodic grids the x1-secular component (the mean
// of G1) is split off first and reported as secular_slope. f may be empty.
PressureField pressure_recover(const VectorField& u, const ScalarField& rho,
                               const ScalarField& mu, const VectorField& f);

struct MomentumResidual {
    double l2 = 0.0;
    double max = 0.0;
};

// Nodewise residual div(rho u x u) - div(mu S u) + grad Pi - f, evaluated only
// at nodes whose composite stencil stays strictly inside the domain (two node
// layers away from non-periodic walls). f may be empty.
MomentumResidual momentum_residual(const VectorField& u, const ScalarField& rho,
                                   const ScalarField& mu, const PressureField& pressure,
                                   const VectorField& f);

} // namespace vvs
