#include "vvs/lift.hpp"
#include "vvs/problem.hpp"
#include "vvs/symmetric.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>

using namespace vvs;

namespace {

std::vector<std::array<double, 2>> uniform_samples(const Grid& g, double u1, double u2) {
    return std::vector<std::array<double, 2>>(boundary_loop(g).size(), {u1, u2});
}

} // namespace

TEST_CASE("resting boundary keeps the gauge") {
    Grid g(9, 8, 0.0, 1.0, 0.0, 1.0, false);
    BoundaryTrace trace = boundary_stream(uniform_samples(g, 0.0, 0.0), g, 5.0, 1e-8);
    CHECK(trace.closure_defect == doctest::Approx(0.0).epsilon(1e-14));
    for (double v : trace.value) CHECK(v == 5.0);
    for (double s : trace.slope_bottom) CHECK(s == 0.0);
    for (double s : trace.slope_left) CHECK(s == 0.0);

    ScalarField lift = build_lift(trace, 0.1);
    CHECK(lift(0, 0) == 5.0);
    CHECK(lift(4, 4) == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("gauge shift moves the whole trace") {
    Grid g(9, 8, 0.0, 2.0, -1.0, 1.0, false);
    std::vector<std::array<double, 2>> u0 = uniform_samples(g, 1.0, 0.0);
    BoundaryTrace a = boundary_stream(u0, g, 0.0, 1e-8);
    BoundaryTrace b = boundary_stream(u0, g, 5.0, 1e-8);
    for (size_t k = 0; k < a.value.size(); ++k)
        CHECK(b.value[k] - a.value[k] == doctest::Approx(5.0).epsilon(1e-14));
}

TEST_CASE("net throughflow is rejected") {
    Grid g(9, 8, 0.0, 1.0, 0.0, 1.0, false);
    std::vector<BoundaryNode> loop = boundary_loop(g);
    std::vector<std::array<double, 2>> outflow(loop.size());
    for (size_t k = 0; k < loop.size(); ++k)
        outflow[k] = {loop[k].normal[0], loop[k].normal[1]};
    CHECK(check_flux(outflow, g) > 1.0);
    CHECK_THROWS_AS(boundary_stream(outflow, g, 0.0, 1e-8), std::invalid_argument);
}

TEST_CASE("tangential boundary data has zero flux") {
    Grid g(11, 9, 0.0, 1.5, 0.0, 1.0, false);
    std::vector<BoundaryNode> loop = boundary_loop(g);
    std::vector<std::array<double, 2>> swirl(loop.size());
    for (size_t k = 0; k < loop.size(); ++k) {
        // The tangent is ambiguous at corners; pick data that vanishes there
        // so it is tangential against both adjacent walls.
        bool corner = (loop[k].i == 0 || loop[k].i == g.nx - 1) &&
                      (loop[k].j == 0 || loop[k].j == g.ny - 1);
        double s = corner ? 0.0 : 1.0;
        swirl[k] = {s * loop[k].tangent[0], s * loop[k].tangent[1]};
    }
    CHECK(check_flux(swirl, g) == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("cutoff endpoints and monotonicity") {
    CHECK(cutoff(0.0, 0.2) == 1.0);
    CHECK(cutoff(0.2, 0.2) == 0.0);
    CHECK(cutoff(0.3, 0.2) == 0.0);
    CHECK(cutoff(0.1, 0.2) == doctest::Approx(0.5));
    double prev = 1.0;
    for (int k = 1; k <= 10; ++k) {
        double c = cutoff(0.02 * k, 0.2);
        CHECK(c <= prev);
        prev = c;
    }
}

TEST_CASE("extended lift recovers wall velocities by central differences") {
    Grid g(17, 15, 0.0, 1.0, -1.0, 1.0, true);
    CouetteConstants cc = couette_constants(1.0, 2.0, 0.0);
    PiecewiseProfile u1 = couette_profile(cc.C, 0.0, cc.C2);
    std::vector<BoundaryNode> loop = boundary_loop(g);
    std::vector<std::array<double, 2>> u0(loop.size());
    for (size_t k = 0; k < loop.size(); ++k) u0[k] = {u1.value(g.x2(loop[k].j)), 0.0};
    BoundaryTrace trace = boundary_stream(u0, g, 0.0, 1e-8);
    ExtendedField ext = build_lift_extended(trace, 0.2);
    VectorField rec = extended_grad_perp(ext);
    for (int i = 0; i < g.nx; ++i) {
        CHECK(rec.c1(i, 0) == doctest::Approx(u1.value(-1.0)).epsilon(1e-12));
        CHECK(rec.c2(i, 0) == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(rec.c1(i, g.ny - 1) == doctest::Approx(u1.value(1.0)).epsilon(1e-12));
        CHECK(rec.c2(i, g.ny - 1) == doctest::Approx(0.0).epsilon(1e-12));
    }
}

TEST_CASE("mollifier preserves constants and bounds") {
    Grid g(15, 13, 0.0, 1.0, 0.0, 1.0, false);
    ScalarField c(g, 2.5);
    ScalarField mc = mollify(c, 4.0 * g.h1());
    for (double v : mc.v) CHECK(v == doctest::Approx(2.5).epsilon(1e-14));

    ScalarField f(g);
    f.fill_from([](double x, double y) { return std::sin(9.0 * x) + std::cos(7.0 * y); });
    double lo = f.min_value(), hi = f.max_value();
    ScalarField mf = mollify(f, 3.0 * g.h1());
    CHECK(mf.min_value() >= lo - 1e-14);
    CHECK(mf.max_value() <= hi + 1e-14);

    ScalarField id = mollify(f, 0.5 * g.h1());
    for (size_t k = 0; k < f.v.size(); ++k) CHECK(id.v[k] == f.v[k]);
}

TEST_CASE("solver parameter defaults follow the geometry") {
    Grid g(9, 9, 0.0, 2.0, 0.0, 1.0, false);
    ProblemSpec spec;
    spec.grid = g;
    spec.u0_samples = uniform_samples(g, 0.0, 0.0);
    spec.eta = ClosureTable::constant(1.0);
    spec.b = ClosureTable::constant(1.0);
    CHECK(spec.delta() == doctest::Approx(0.1));
    CHECK(spec.eps_mollify() == doctest::Approx(2.0 * g.h2()));
    CHECK_NOTHROW(spec.validate());

    spec.u0_samples.pop_back();
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
    spec.u0_samples = uniform_samples(g, 0.0, 0.0);
    spec.b = ClosureTable({0.0, 1.0}, {-1.0, 1.0});
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
}
