#pragma once

#include "vvs/field.hpp"

namespace vvs {

struct Norms {
    double l2 = 0.0;
    double h1_semi = 0.0;
    double h2_semi = 0.0;
};

// Trapezoidal quadrature weight of node (i,j); periodic columns all carry
// full weight h1 (the duplicate column gets zero so plain loops never double
// count).
double node_weight(const Grid& g, int i, int j);

// L2 via trapezoidal weights; H1/H2 seminorms from central differences with
// second-order one-sided stencils on non-periodic edges (exact on linears, so
// phi = x1 on the unit square gives h1_semi = 1 exactly).
Norms discrete_norms(const ScalarField& phi);

double l2_norm(const ScalarField& phi);
double l2_norm(const VectorField& u);
// Full H2 norm sqrt(l2^2 + h1_semi^2 + h2_semi^2).
double h2_norm(const ScalarField& phi);

// First derivatives for general fields: central inside, one-sided 3-point on
// non-periodic edges, wrap on periodic ones.
ScalarField diff_x1(const ScalarField& phi);
ScalarField diff_x2(const ScalarField& phi);

} // namespace vvs
