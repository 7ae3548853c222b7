#pragma once

#include "vvs/closure.hpp"
#include "vvs/field.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace vvs {

struct SolverParams {
    double delta = -1.0;       // lift cutoff width; <0 means 0.1 * min extent
    double eps_mollify = -1.0; // viscosity smoothing radius; <0 means 2 * min(h1,h2)
    double omega = 1.0;        // relaxation, halved on stalls down to 1/16
    double tol_rel = 1e-8;
    double tol_abs = 1e-10;
    int max_iter = 50;
    double flux_tol = 1e-8;
};

struct ProblemSpec {
    Grid grid;
    std::vector<std::array<double, 2>> u0_samples;  // boundary loop order
    double C0 = 0.0;
    VectorField force;                              // may be empty => zero
    ClosureTable eta;                               // density from stream value
    ClosureTable b;                                 // viscosity from density
    SolverParams params;

    double delta() const;
    double eps_mollify() const;
    // Sample count, grid sanity, positive viscosity range. Throws on failure.
    void validate() const;
};

struct RunReport {
    int iterations = 0;
    std::vector<double> update_norms;
    std::vector<double> energy;
    std::vector<double> linear_residuals;
    double apriori_bound = 0.0;
    bool bound_ok = true;
    bool converged = false;
    double wall_ms = 0.0;
    double omega_final = 1.0;
};

} // namespace vvs
