#pragma once

#include "vvs/field.hpp"
#include "vvs/operators.hpp"

#include <array>
#include <vector>

namespace vvs {

// Stream values along the boundary loop, integrated from the normal velocity
// (dPhi/dtau = -u0 . n), anchored at C0 on the start corner. Also keeps the
// velocity samples: the inward normal derivative of the stream function at a
// wall is -u0 . tau, which the lift must carry.
struct BoundaryTrace {
    Grid grid;
    std::vector<BoundaryNode> loop;
    std::vector<double> value;                 // per loop node
    std::vector<std::array<double, 2>> u0;     // per loop node
    double C0 = 0.0;
    double closure_defect = 0.0;               // loop-end value minus C0

    // Per-edge lookups (corners appear in both adjacent edges; slopes are
    // taken with the edge's own tangent).
    std::vector<double> value_bottom, value_top;   // size nx
    std::vector<double> value_left, value_right;   // size ny
    std::vector<double> slope_bottom, slope_top;   // inward d(value)/d(dist)
    std::vector<double> slope_left, slope_right;
};

// Trapezoidal circulation of u0 . n around the boundary loop. Samples are in
// traversal order, one per boundary node (2*(nx+ny)-4 entries).
double check_flux(const std::vector<std::array<double, 2>>& u0_samples, const Grid& g);

// Throws when |flux| > flux_tol; otherwise integrates the trace.
BoundaryTrace boundary_stream(const std::vector<std::array<double, 2>>& u0_samples,
                              const Grid& g, double C0, double flux_tol);

// Smoothstep profile 1 - (3t^2 - 2t^3) with t = clamp(dist/delta, 0, 1);
// equals 1 on the boundary, 0 at dist >= delta, slope 0 at both ends.
double cutoff(double dist, double delta);

// First-order boundary jet (trace value plus inward-distance times
// -u0 . tau at the nearest wall point) multiplied by the cutoff. Defined for
// ghost coordinates as well (negative distance, cutoff 1). On periodic grids
// only the two walls count as boundary.
double lift_value(const BoundaryTrace& trace, double delta, double x1, double x2);

ScalarField build_lift(const BoundaryTrace& trace, double delta);
ExtendedField build_lift_extended(const BoundaryTrace& trace, double delta);

// Separable truncated-Gaussian smoothing of radius eps (std dev eps/2,
// support eps); eps < grid spacing degenerates to the identity. Weights are
// renormalized at non-periodic edges and wrapped on periodic ones, so convex
// combinations preserve constants and bounds.
ScalarField mollify(const ScalarField& f, double eps);

} // namespace vvs
