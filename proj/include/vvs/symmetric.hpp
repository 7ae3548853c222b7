#pragma once

#include "vvs/closure.hpp"

#include <limits>
#include <vector>

namespace vvs {

// One-dimensional profiles for the symmetric flow families. A profile is a
// list of analytic pieces over a closed interval; breakpoints carry a side
// flag so evaluation at an interface picks the piece the closed forms assign
// it to (shear interface belongs below, polar interfaces belong to the outer
// piece).

enum class ProfileCoord { X2, R, Theta };

// Per-piece bases: polynomial in the coordinate, the annular shear basis
// c0 + c1 ln x + c2 / x^2, or the reciprocal c0 / (c1 + c2 x).
enum class PieceForm { Poly, Annular, Reciprocal };

struct ProfilePiece {
    PieceForm form = PieceForm::Poly;
    std::vector<double> coef;

    double value(double x) const;
    double derivative(double x) const;
    double second_derivative(double x) const;
};

struct PiecewiseProfile {
    ProfileCoord coord = ProfileCoord::X2;
    double lo = 0.0;
    double hi = 1.0;
    std::vector<double> breakpoints;   // strictly increasing, interior to [lo, hi]
    std::vector<bool> attach_right;    // true: breakpoint evaluates on its right piece
    std::vector<ProfilePiece> pieces;  // breakpoints.size() + 1 entries

    // Piece containing x (attach flags break ties at breakpoints).
    int piece_index(double x) const;

    double value(double x) const;
    double derivative(double x) const;
    double second_derivative(double x) const;

    // One-sided limits at an interior breakpoint, for jump assertions.
    double value_from_left(int bp) const;
    double value_from_right(int bp) const;
    double derivative_from_left(int bp) const;
    double derivative_from_right(int bp) const;

    // Piecewise-linear interpolant of nodal samples (xs strictly increasing).
    static PiecewiseProfile from_samples(ProfileCoord coord, const std::vector<double>& xs,
                                         const std::vector<double>& vs);
};

// Constant profile over [lo, hi].
PiecewiseProfile constant_profile(ProfileCoord coord, double lo, double hi, double value);

// ---- Plane shear family (unidirectional flow between parallel walls) ----
//
// u = u1(x2) e1 on the strip x2 in [-1, 1], viscosity 1 below the interface
// x2 = 0 and 2 above it. The momentum equation collapses to
// d/dx2 (mu du1/dx2) = C, so the flux mu u1' is the global linear Cx2 + C1
// and u1 is piecewise quadratic.

struct CouetteConstants {
    double C = 0.0;
    double C2 = 0.0;
};

// Constants from the wall values u1(-1) = a_minus, u1(1) = a_plus and the
// free flux parameter C1: C = 4(a_minus - a_plus) + 6 C1,
// C2 = 2 a_plus - a_minus - 2 C1.
CouetteConstants couette_constants(double a_minus, double a_plus, double C1);

// Viscosity step 1 for x2 <= 0, 2 for x2 > 0.
PiecewiseProfile couette_mu();

// u1(x2) = (C/4)x2^2 + (C1/2)x2 + C2 above, (C/2)x2^2 + C1 x2 + C2 below.
PiecewiseProfile couette_profile(double C, double C1, double C2);

// Stream function with Phi' = u1 and Phi(0) = C3 (piecewise cubic).
PiecewiseProfile couette_stream(double C, double C1, double C2, double C3);

// Gauge constant C3 that places the bottom-wall stream value at C0.
double couette_gauge_C3(double a_minus, double a_plus, double C1, double C0);

// Quadrature solution u1(x2) = C2 + int_0^{x2} (Cs + C1) / mu(s) ds. Exact
// per-piece antiderivatives for piecewise-constant mu (bitwise identical to
// couette_profile for the standard step), trapezoidal sampling otherwise.
PiecewiseProfile couette_ode(const PiecewiseProfile& mu, double C, double C1, double C2);

// Density-from-stream table for the shear family. The stream trace is
// strictly increasing when u1 > 0 on the strip (checked directly; throws
// std::invalid_argument otherwise), so density = eta(stream) with
// eta = b^{-1}(1) on [phi_minus, C3] and b^{-1}(2) on (C3, phi_plus], ramped
// over the given stream-value width to keep the table Lipschitz.
struct CouetteEta {
    ClosureTable eta;
    double phi_minus = 0.0;
    double phi_plus = 0.0;
};
CouetteEta couette_eta_table(double a_minus, double a_plus, double C1, double C3,
                             const ClosureTable& b, double ramp_width);

// ---- Concentric family (azimuthal flow between rotating circles) ----
//
// u = r g(r) e_theta on the annulus 1/2 <= r <= 2, viscosity 2 inside r < 1
// and 1 outside. The flux mu r^3 g' equals -(C/2) r^2 + C1 globally.

struct ConcentricConstants {
    double C = 0.0;
    double C2 = 0.0;
};

// Constants from the ring values g(1/2) = g_minus, g(2) = g_plus and the
// free flux parameter C1: C = (3 ln 2 / 4)^{-1} ((9/8) C1 - g_plus + g_minus),
// C2 = (1/3) ((9/8) C1 + g_plus + 2 g_minus).
ConcentricConstants concentric_constants(double g_minus, double g_plus, double C1);

// Viscosity step 2 for r < 1, 1 for r >= 1, on [1/2, 2].
PiecewiseProfile concentric_mu();

// g(r) = -(C/4) ln r - (C1/4)(1/r^2 - 1) + C2 inside, coefficients doubled
// outside; continuous at r = 1 with value C2.
PiecewiseProfile concentric_profile(double C, double C1, double C2);

// Quadrature of g' = (-(C/2) r^2 + C1) / (mu r^3) anchored at g(1) = C2.
// Exact per-piece antiderivatives for piecewise-constant mu, trapezoidal
// sampling otherwise.
PiecewiseProfile concentric_ode(const PiecewiseProfile& mu, double C, double C1, double C2);

// ---- Radial family (purely radial flow in a sector) ----
//
// u = (h(theta)/r) e_r on theta in [0, pi/2], governed by the nonlinear
// two-point problem rho h^2 + d/dtheta (mu dh/dtheta) + 4 mu h = C.

// The closed-form triple: h = (-pi/2 - theta) then (-pi/4 - 2 theta) across
// theta = pi/4, rho = -4 mu / h, mu the 2/1 step; solves the family with
// C = 0 and constant flux mu h' = -2.
struct RadialExample {
    PiecewiseProfile h;
    PiecewiseProfile rho;
    PiecewiseProfile mu;
};
RadialExample radial_example();

// Damped-Newton collocation on a uniform theta grid over the profiles'
// interval, conservative differencing of the flux term, analytic tridiagonal
// Jacobian, initial guess linear between the boundary values. Converged when
// the residual max-norm drops below 1e-10 or stalls at the round-off floor
// of the flux evaluation; throws std::runtime_error with the residual trace
// after 50 damped steps.
PiecewiseProfile radial_bvp(const PiecewiseProfile& rho, const PiecewiseProfile& mu,
                            double C, double h_left, double h_right, int n_theta);

// ---- Residual checks ----

enum class SymmetricKind { Couette, Concentric, Radial };

// Max-norm residual of the family's one-dimensional stream equation,
// evaluated by conservative differencing of the analytic flux on a fine
// uniform grid, skipping nodes whose stencil straddles a breakpoint, and
// scaled by the flux magnitude. The profile argument is the stream Phi for
// the shear family, g for the concentric family, and h for the radial one
// (which also needs rho). When C is NaN the family constant is estimated as
// the sampled mean, otherwise the given value is enforced (the shear
// equation has zero right-hand side and ignores C).
double symmetric_stream_residual(SymmetricKind kind, const PiecewiseProfile& profile,
                                 const PiecewiseProfile& mu,
                                 const PiecewiseProfile* rho = nullptr,
                                 double C = std::numeric_limits<double>::quiet_NaN());

// Deviation of the sampled convective term of the concentric field
// u = r g(r) e_theta from the centripetal closed form -r g^2 e_r, by central
// differencing of the analytic velocity on the annulus (relative max norm).
double concentric_convection_residual(const PiecewiseProfile& g);

// Deviation of the sampled viscous stress divergence of the radial field
// u = (h(theta)/r) e_r from its closed form
// (mu h'')/r^3 e_r + 2 (mu h)'/r^3 e_theta within viscosity pieces (e_theta
// the counterclockwise tangent), by central differencing of the analytic
// stress (relative max norm).
double radial_stress_divergence_residual(const PiecewiseProfile& h, const PiecewiseProfile& mu);

} // namespace vvs
