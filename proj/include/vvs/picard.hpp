#pragma once

#include "vvs/lift.hpp"
#include "vvs/problem.hpp"

namespace vvs {

// Boundary lift in every representation the step needs: nodal values, the
// ghost-ring extension feeding honest second-difference stencils, and its
// perpendicular gradient (the boundary part of the advecting field).
struct LiftData {
    BoundaryTrace trace;
    ScalarField field;
    ExtendedField extended;
    VectorField w;
};

LiftData build_lift_data(const ProblemSpec& spec);

// Clamped correction plus everything frozen from it for the next solve.
struct IterateState {
    ScalarField phi;     // clamped correction
    ScalarField stream;  // lift + phi
    ScalarField rho;     // density closure of stream
    ScalarField mu;      // mollified viscosity closure of rho
    VectorField w;       // grad_perp of stream (extended stencils on the lift part)
    int k = 0;
};

// Fixed rho/mu fields for convergence studies where the coefficients are not
// tied to the stream function through closures. Convection still refreshes
// its advecting field from the current iterate.
struct PrescribedCoefficients {
    ScalarField rho;
    ScalarField mu;
};

struct Solution {
    Grid grid;
    ScalarField stream;
    ScalarField phi;
    ScalarField lift;
    ScalarField rho;
    ScalarField mu;
    VectorField velocity;
    RunReport report;
};

// One linearized step: solves [E(mu_k) - K(rho_k, w_k)] phi = F + K.lift -
// E.lift on the clamped space, relaxes phi_{k+1} = (1-omega) phi_k + omega *
// phi_solved, and refreshes the coefficient fields. Appends the achieved
// relative linear residual to the report; throws if the factorization fails
// or the residual exceeds 1e-10, and on non-finite iterates.
IterateState oseen_step(const ProblemSpec& spec, const LiftData& lift, const IterateState& state,
                        double omega, RunReport& report,
                        const PrescribedCoefficients* prescribed = nullptr);

IterateState initial_state(const ProblemSpec& spec, const LiftData& lift,
                           const PrescribedCoefficients* prescribed = nullptr);

// Fixed-point drive: flux check, lift, then oseen_step from phi = 0 until
// ||phi_{k+1} - phi_k||_{H2} <= tol_rel ||phi_{k+1}||_{H2} + tol_abs or
// max_iter (non-converged report, not an error). Iterate norms above 1e6
// times the first iterate raise a divergence error. The report carries
// update norms, correction energies, linear residuals, and the a-priori
// bound diagnostic.
Solution solve_stream(const ProblemSpec& spec,
                      const PrescribedCoefficients* prescribed = nullptr);

} // namespace vvs
