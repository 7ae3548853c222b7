#include "vvs/symmetric.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

using namespace vvs;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("plane shear constants and stream gauge") {
    CouetteConstants cc = couette_constants(1.0, 2.0, 0.0);
    CHECK(cc.C == -4.0);
    CHECK(cc.C2 == 3.0);

    double c3 = couette_gauge_C3(1.0, 2.0, 0.0, 0.0);
    CHECK(c3 == doctest::Approx(7.0 / 3.0).epsilon(1e-15));

    PiecewiseProfile phi = couette_stream(cc.C, 0.0, cc.C2, c3);
    CHECK(std::abs(phi.value(-1.0)) <= 1e-14);
    CHECK(std::abs(phi.value(1.0) - 5.0) <= 1e-14);
    CHECK(phi.value(0.0) == doctest::Approx(c3).epsilon(1e-15));

    // The stream derivative is the velocity profile.
    PiecewiseProfile u1 = couette_profile(cc.C, 0.0, cc.C2);
    for (double y : {-0.9, -0.4, 0.3, 0.8})
        CHECK(phi.derivative(y) == doctest::Approx(u1.value(y)).epsilon(1e-14));
    CHECK(u1.value(-1.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(u1.value(1.0) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(u1.value(0.0) == doctest::Approx(3.0).epsilon(1e-15));
}

TEST_CASE("plane shear quadrature matches the closed form") {
    CouetteConstants cc = couette_constants(0.7, -1.3, 0.45);
    PiecewiseProfile closed = couette_profile(cc.C, 0.45, cc.C2);
    PiecewiseProfile quad = couette_ode(couette_mu(), cc.C, 0.45, cc.C2);
    for (int k = 0; k <= 100; ++k) {
        double y = -1.0 + 0.02 * k;
        CHECK(quad.value(y) == doctest::Approx(closed.value(y)).epsilon(1e-14));
    }
    CHECK(std::abs(closed.value(-1.0) - 0.7) <= 1e-13);
    CHECK(std::abs(closed.value(1.0) + 1.3) <= 1e-13);
}

TEST_CASE("plane shear momentum flux is continuous across the interface") {
    PiecewiseProfile mu = couette_mu();
    for (double c1 : {-0.8, 0.0, 0.6}) {
        CouetteConstants cc = couette_constants(1.4, 0.3, c1);
        PiecewiseProfile u1 = couette_profile(cc.C, c1, cc.C2);
        double below = mu.value_from_left(0) * u1.derivative_from_left(0);
        double above = mu.value_from_right(0) * u1.derivative_from_right(0);
        CHECK(std::abs(below - c1) <= 1e-13);
        CHECK(std::abs(above - c1) <= 1e-13);
    }
}

TEST_CASE("rigid rotation is an exact concentric solution") {
    ConcentricConstants cc = concentric_constants(0.75, 0.75, 0.0);
    CHECK(std::abs(cc.C) <= 1e-15);
    CHECK(cc.C2 == doctest::Approx(0.75).epsilon(1e-15));
    PiecewiseProfile g = concentric_profile(cc.C, 0.0, cc.C2);
    for (double r : {0.5, 0.8, 1.0, 1.5, 2.0})
        CHECK(g.value(r) == doctest::Approx(0.75).epsilon(1e-14));
}

TEST_CASE("concentric profile continuity and flux law") {
    const double gm = 1.0, gp = -0.4, c1 = 0.3;
    ConcentricConstants cc = concentric_constants(gm, gp, c1);
    PiecewiseProfile g = concentric_profile(cc.C, c1, cc.C2);

    CHECK(std::abs(g.value(0.5) - gm) <= 1e-13);
    CHECK(std::abs(g.value(2.0) - gp) <= 1e-13);
    CHECK(std::abs(g.value_from_left(0) - cc.C2) <= 1e-13);
    CHECK(std::abs(g.value_from_right(0) - cc.C2) <= 1e-13);

    // mu r^3 g' = -(C/2) r^2 + C1 within each viscosity piece.
    PiecewiseProfile mu = concentric_mu();
    for (double r : {0.55, 0.7, 0.95, 1.05, 1.4, 1.9}) {
        double flux = mu.value(r) * r * r * r * g.derivative(r);
        CHECK(flux == doctest::Approx(-(cc.C / 2.0) * r * r + c1).epsilon(1e-12));
    }

    PiecewiseProfile quad = concentric_ode(mu, cc.C, c1, cc.C2);
    for (int k = 0; k <= 60; ++k) {
        double r = 0.5 + 1.5 * k / 60.0;
        CHECK(quad.value(r) == doctest::Approx(g.value(r)).epsilon(1e-13));
    }
}

TEST_CASE("radial example satisfies its pinned values") {
    RadialExample ex = radial_example();
    CHECK(ex.h.value(0.0) == doctest::Approx(-kPi / 2.0).epsilon(1e-15));
    CHECK(ex.h.value(kPi / 4.0) == doctest::Approx(-3.0 * kPi / 4.0).epsilon(1e-15));
    CHECK(ex.h.value(kPi / 2.0) == doctest::Approx(-5.0 * kPi / 4.0).epsilon(1e-15));

    // Constant momentum flux mu h' = -2 on both sides of the kink.
    CHECK(ex.mu.value(0.1) * ex.h.derivative(0.1) == doctest::Approx(-2.0).epsilon(1e-15));
    CHECK(ex.mu.value(1.0) * ex.h.derivative(1.0) == doctest::Approx(-2.0).epsilon(1e-15));

    CHECK(ex.rho.value(0.0) == doctest::Approx(16.0 / kPi).epsilon(1e-14));
    CHECK(ex.rho.value(kPi / 4.0) == doctest::Approx(16.0 / (3.0 * kPi)).epsilon(1e-14));
    // rho = -4 mu / h pointwise.
    for (double t : {0.2, 0.6, 1.0, 1.4})
        CHECK(ex.rho.value(t) ==
              doctest::Approx(-4.0 * ex.mu.value(t) / ex.h.value(t)).epsilon(1e-14));
}

TEST_CASE("one-dimensional stream residuals vanish on the closed forms") {
    CouetteConstants sc = couette_constants(1.0, 2.0, 0.0);
    PiecewiseProfile phi =
        couette_stream(sc.C, 0.0, sc.C2, couette_gauge_C3(1.0, 2.0, 0.0, 0.0));
    CHECK(symmetric_stream_residual(SymmetricKind::Couette, phi, couette_mu()) <= 1e-8);

    ConcentricConstants cc = concentric_constants(1.0, -0.4, 0.3);
    PiecewiseProfile g = concentric_profile(cc.C, 0.3, cc.C2);
    CHECK(symmetric_stream_residual(SymmetricKind::Concentric, g, concentric_mu()) <= 1e-8);
    CHECK(concentric_convection_residual(g) <= 1e-6);

    RadialExample ex = radial_example();
    CHECK(symmetric_stream_residual(SymmetricKind::Radial, ex.h, ex.mu, &ex.rho, 0.0) <= 1e-8);
    CHECK(radial_stress_divergence_residual(ex.h, ex.mu) <= 1e-6);
}

TEST_CASE("radial boundary value solver reproduces closed forms") {
    // rho = 0, mu = 1 on [0, pi/4] linearizes the problem to h'' + 4h = 0,
    // whose solution through h(0) = 0, h(pi/4) = 1 is sin(2 theta).
    PiecewiseProfile zero = constant_profile(ProfileCoord::Theta, 0.0, kPi / 4.0, 0.0);
    PiecewiseProfile one = constant_profile(ProfileCoord::Theta, 0.0, kPi / 4.0, 1.0);
    int n = 1024;
    PiecewiseProfile sol = radial_bvp(zero, one, 0.0, 0.0, 1.0, n);
    double worst = 0.0;
    for (int k = 0; k <= n; ++k) {
        double t = (kPi / 4.0) * k / n;
        worst = std::max(worst, std::abs(sol.value(t) - std::sin(2.0 * t)));
    }
    CHECK(worst <= 1e-6);

    // The nonlinear piecewise example is linear within each piece, so the
    // collocation is exact there up to round-off.
    RadialExample ex = radial_example();
    PiecewiseProfile hex =
        radial_bvp(ex.rho, ex.mu, 0.0, ex.h.value(0.0), ex.h.value(kPi / 2.0), 512);
    double worst_ex = 0.0;
    for (int k = 0; k <= 512; ++k) {
        double t = (kPi / 2.0) * k / 512.0;
        worst_ex = std::max(worst_ex, std::abs(hex.value(t) - ex.h.value(t)));
    }
    CHECK(worst_ex <= 1e-10);
}

TEST_CASE("sampled profiles round trip and reject out-of-domain queries") {
    std::vector<double> xs = {0.0, 0.5, 1.0};
    std::vector<double> vs = {1.0, 3.0, 2.0};
    PiecewiseProfile p = PiecewiseProfile::from_samples(ProfileCoord::X2, xs, vs);
    for (size_t k = 0; k < xs.size(); ++k)
        CHECK(p.value(xs[k]) == doctest::Approx(vs[k]).epsilon(1e-15));
    CHECK(p.value(0.25) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(p.value(0.75) == doctest::Approx(2.5).epsilon(1e-15));

    CHECK_THROWS_AS(p.value(1.2), std::invalid_argument);
    CHECK_THROWS_AS(p.value(-0.2), std::invalid_argument);
    RadialExample ex = radial_example();
    CHECK_THROWS_AS(ex.h.value(2.0), std::invalid_argument);
}
