#pragma once

#include "vvs/picard.hpp"
#include "vvs/reconstruct.hpp"

#include <optional>
#include <string>
#include <vector>

namespace vvs {

// Shortest 17-significant-digit decimal form, independent of locale.
std::string format_g17(double x);

// Parse a problem description from a JSON config file. Schema (see README):
// domain{x1,x2}, grid{nx,ny,periodic_x1}, boundary{u0,C0}, optional force,
// closures{eta,b}, optional solver{delta,eps,omega,tol_rel,tol_abs,max_iter,
// flux_tol}. Throws std::runtime_error with a path-prefixed message on any
// structural or value error.
ProblemSpec load_problem(const std::string& path);

// Nodal state table x1,x2,Phi,u1,u2,rho,mu,Pi, row-major bottom to top, with
// the secular pressure slope reattached to the periodic part.
void write_state_csv(const std::string& path, const Solution& sol,
                     const PressureField& pressure);

// Iteration record. Includes the pressure compatibility defect when given.
void write_report_json(const std::string& path, const RunReport& report,
                       std::optional<double> pressure_compat = std::nullopt);

// Column-oriented CSV for one-dimensional profile tables.
struct ProfileColumn {
    std::string name;
    std::vector<double> values;
};
void write_profile_csv(const std::string& path, const std::vector<ProfileColumn>& columns);

} // namespace vvs
