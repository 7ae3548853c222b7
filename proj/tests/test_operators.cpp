#include "vvs/closure.hpp"
#include "vvs/norms.hpp"
#include "vvs/operators.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace vvs;

namespace {

constexpr double kPi = std::numbers::pi;

ScalarField random_clamped(const ClampedDofs& dofs, std::mt19937& rng) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Eigen::VectorXd x(dofs.count());
    for (int k = 0; k < x.size(); ++k) x[k] = dist(rng);
    return field_from_dofs(dofs, x);
}

ScalarField random_viscosity(const Grid& g, std::mt19937& rng) {
    std::uniform_real_distribution<double> dist(0.4, 2.5);
    ScalarField mu(g);
    for (double& m : mu.v) m = dist(rng);
    mu.sync_periodic();
    return mu;
}

} // namespace

TEST_CASE("energy row reproduces the fourth-order operator on x1^2 x2^2") {
    Grid g(11, 11, -1.0, 1.0, -1.0, 1.0, false);
    ScalarField mu(g, 1.0), phi(g);
    phi.fill_from([](double x, double y) { return x * x * y * y; });
    ClampedDofs dofs = ClampedDofs::build(g);
    EnergyOperator energy = assemble_energy_operator(mu, dofs);
    Eigen::VectorXd y = energy.matrix * dofs_from_field(dofs, phi);
    int center = dofs.dof_of_node[static_cast<size_t>(g.unique_index(5, 5))];
    REQUIRE(center >= 0);
    CHECK(y[center] == doctest::Approx(8.0 * g.h1() * g.h2()).epsilon(1e-12));
}

TEST_CASE("quadratic form matches the energy product") {
    std::mt19937 rng(42u);
    for (bool periodic : {false, true}) {
        Grid g(periodic ? 14 : 12, 11, 0.0, 1.4, -0.3, 0.9, periodic);
        ClampedDofs dofs = ClampedDofs::build(g);
        ScalarField mu = random_viscosity(g, rng);
        EnergyOperator energy = assemble_energy_operator(mu, dofs);
        for (int t = 0; t < 5; ++t) {
            ScalarField phi = random_clamped(dofs, rng);
            ScalarField psi = random_clamped(dofs, rng);
            double quad = dofs_from_field(dofs, phi).dot(energy.matrix * dofs_from_field(dofs, psi));
            double prod = 2.0 * energy_product(mu, phi, psi);
            CHECK(quad == doctest::Approx(prod).epsilon(1e-12));
        }
    }
}

TEST_CASE("energy matrix is symmetric") {
    std::mt19937 rng(43u);
    Grid g(12, 10, 0.0, 1.0, 0.0, 1.0, false);
    ClampedDofs dofs = ClampedDofs::build(g);
    ScalarField mu = random_viscosity(g, rng);
    EnergyOperator energy = assemble_energy_operator(mu, dofs);
    Eigen::SparseMatrix<double> skew = energy.matrix - Eigen::SparseMatrix<double>(energy.matrix.transpose());
    CHECK(skew.norm() <= 1e-14 * energy.matrix.norm());
}

TEST_CASE("laplacian norm squares the unit-viscosity energy") {
    std::mt19937 rng(44u);
    Grid g(13, 12, -0.5, 0.5, 0.0, 1.0, false);
    ClampedDofs dofs = ClampedDofs::build(g);
    ScalarField phi = random_clamped(dofs, rng);
    ScalarField one(g, 1.0);
    double lap = laplacian_norm_clamped(phi);
    CHECK(lap * lap == doctest::Approx(2.0 * energy_product(one, phi, phi)).epsilon(1e-12));
}

TEST_CASE("rotated gradient of a linear stream is uniform") {
    for (bool periodic : {false, true}) {
        Grid g(9, 8, 0.0, 1.0, -1.0, 1.0, periodic);
        ScalarField phi(g);
        phi.fill_from([](double, double y) { return y; });
        VectorField u = grad_perp(phi);
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i) {
                CHECK(u.c1(i, j) == doctest::Approx(1.0).epsilon(1e-13));
                CHECK(u.c2(i, j) == doctest::Approx(0.0).epsilon(1e-13));
            }
    }
}

TEST_CASE("clamped rotation vanishes on the walls") {
    std::mt19937 rng(45u);
    Grid g(10, 9, 0.0, 1.0, 0.0, 1.0, false);
    ClampedDofs dofs = ClampedDofs::build(g);
    ScalarField phi = random_clamped(dofs, rng);
    VectorField u = clamped_grad_perp(phi);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            if (g.on_boundary(i, j)) {
                CHECK(u.c1(i, j) == 0.0);
                CHECK(u.c2(i, j) == 0.0);
            }
}

TEST_CASE("rotated gradients are discretely divergence free") {
    Grid g(14, 15, 0.0, 1.0, 0.0, 1.0, false);
    ScalarField phi(g);
    phi.fill_from([](double x, double y) {
        return std::sin(2.0 * x + 0.7) * std::cos(1.3 * y) + x * x * y;
    });
    ScalarField div = divergence(grad_perp(phi));
    for (int j = 2; j < g.ny - 2; ++j)
        for (int i = 2; i < g.nx - 2; ++i)
            CHECK(std::abs(div(i, j)) <= 1e-13);
}

TEST_CASE("convection matrix realizes the trilinear form") {
    std::mt19937 rng(46u);
    for (bool periodic : {false, true}) {
        Grid g(12, 11, 0.0, 1.1, -0.4, 0.6, periodic);
        ClampedDofs dofs = ClampedDofs::build(g);
        ScalarField rho(g);
        rho.fill_from([](double x, double y) { return 1.0 + 0.4 * x + 0.2 * y * y; });
        ScalarField stir(g);
        stir.fill_from([](double x, double y) {
            return std::sin(kPi * x) * std::sin(kPi * y) + 0.3 * x * y * y;
        });
        VectorField w = grad_perp(stir);
        Eigen::SparseMatrix<double> K = assemble_convection(rho, w, dofs);
        for (int t = 0; t < 5; ++t) {
            ScalarField phi = random_clamped(dofs, rng);
            ScalarField psi = random_clamped(dofs, rng);
            double mat = dofs_from_field(dofs, psi).dot(K * dofs_from_field(dofs, phi));
            double form = trilinear(rho, w, phi, psi);
            CHECK(mat == doctest::Approx(form).epsilon(1e-12));
        }
    }
}
