#include "vvs/picard.hpp"

#include "vvs/norms.hpp"
#include "vvs/operators.hpp"

#include <Eigen/SparseLU>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace vvs {

namespace {

constexpr double kLinearResidualTol = 1e-10;
constexpr double kDivergenceFactor = 1e6;
constexpr double kOmegaFloor = 1.0 / 16.0;

Eigen::VectorXd unique_vec(const ScalarField& f) {
    const Grid& g = f.grid;
    Eigen::VectorXd v(g.unique_count());
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.unique_nx(); ++i)
            v[g.unique_index(i, j)] = f(i, j);
    return v;
}

ScalarField sub_fields(const ScalarField& a, const ScalarField& b) {
    ScalarField r = a;
    for (std::size_t n = 0; n < r.v.size(); ++n)
        r.v[n] -= b.v[n];
    return r;
}

// rhs(psi) = F(psi) + K(rho, w; lift in the transported slot)(psi)
//          - E(mu; lift through extended stencils)(psi)
Eigen::VectorXd assemble_rhs(const ProblemSpec& spec, const LiftData& lift,
                             const IterateState& state, const EnergyOperator& energy) {
    const Grid& g = spec.grid;
    const ClampedDofs& dofs = energy.dofs;
    Eigen::SparseMatrix<double> R = clamped_selection(dofs);
    Eigen::SparseMatrix<double> D1 = op_d1(g), D2 = op_d2(g);
    const Eigen::SparseMatrix<double> P[2] = {D2, Eigen::SparseMatrix<double>(-D1)};
    const Eigen::SparseMatrix<double> Dj[2] = {D1, D2};

    ScalarField s_lift, c_lift;
    extended_second_ops(lift.extended, s_lift, c_lift);
    Eigen::VectorXd sv = unique_vec(s_lift), cv = unique_vec(c_lift);
    Eigen::VectorXd rhs = -(energy.S_free.transpose() * (energy.mdiag.asDiagonal() * sv)) -
                          4.0 * (energy.C_free.transpose() * (energy.mdiag.asDiagonal() * cv));

    const double quad = g.h1() * g.h2();
    Eigen::VectorXd q[2] = {Eigen::VectorXd::Zero(g.unique_count()),
                            Eigen::VectorXd::Zero(g.unique_count())};
    Eigen::VectorXd qint = Eigen::VectorXd::Zero(g.unique_count());
    for (int dof = 0; dof < dofs.count(); ++dof) {
        const int node = dofs.node_of_dof[dof];
        const int i = node % g.unique_nx();
        const int j = node / g.unique_nx();
        qint[node] = quad;
        q[0][node] = state.rho(i, j) * quad * state.w.c1(i, j);
        q[1][node] = state.rho(i, j) * quad * state.w.c2(i, j);
    }

    if (!spec.force.c1.v.empty()) {
        Eigen::VectorXd f1 = qint.cwiseProduct(unique_vec(spec.force.c1));
        Eigen::VectorXd f2 = qint.cwiseProduct(unique_vec(spec.force.c2));
        rhs += R.transpose() * (D2.transpose() * f1) - R.transpose() * (D1.transpose() * f2);
    }

    const Eigen::VectorXd z[2] = {unique_vec(lift.w.c1), unique_vec(lift.w.c2)};
    for (int m = 0; m < 2; ++m)
        for (int d = 0; d < 2; ++d) {
            Eigen::VectorXd t = q[d].cwiseProduct(z[m]);
            rhs += R.transpose() * (P[m].transpose() * (Dj[d].transpose() * t));
        }
    return rhs;
}

IterateState make_state(const ProblemSpec& spec, const LiftData& lift, ScalarField phi, int k,
                        const PrescribedCoefficients* prescribed) {
    IterateState s;
    s.k = k;
    s.phi = std::move(phi);
    s.stream = lift.field;
    for (std::size_t n = 0; n < s.stream.v.size(); ++n)
        s.stream.v[n] += s.phi.v[n];
    if (prescribed) {
        s.rho = prescribed->rho;
        s.mu = prescribed->mu;
    } else {
        s.rho = closure_eval(spec.eta, s.stream);
        s.mu = mollify(closure_eval(spec.b, s.rho), spec.eps_mollify());
    }
    VectorField gp = clamped_grad_perp(s.phi);
    s.w = lift.w;
    for (std::size_t n = 0; n < s.w.c1.v.size(); ++n) {
        s.w.c1.v[n] += gp.c1.v[n];
        s.w.c2.v[n] += gp.c2.v[n];
    }
    return s;
}

} // namespace

LiftData build_lift_data(const ProblemSpec& spec) {
    BoundaryTrace trace =
        boundary_stream(spec.u0_samples, spec.grid, spec.C0, spec.params.flux_tol);
    const double delta = spec.delta();
    ScalarField field = build_lift(trace, delta);
    ExtendedField extended = build_lift_extended(trace, delta);
    VectorField w = extended_grad_perp(extended);
    return LiftData{std::move(trace), std::move(field), std::move(extended), std::move(w)};
}

IterateState initial_state(const ProblemSpec& spec, const LiftData& lift,
                           const PrescribedCoefficients* prescribed) {
    return make_state(spec, lift, ScalarField(spec.grid), 0, prescribed);
}

IterateState oseen_step(const ProblemSpec& spec, const LiftData& lift, const IterateState& state,
                        double omega, RunReport& report,
                        const PrescribedCoefficients* prescribed) {
    const Grid& g = spec.grid;
    ClampedDofs dofs = ClampedDofs::build(g);
    EnergyOperator energy = assemble_energy_operator(state.mu, dofs);
    Eigen::SparseMatrix<double> K = assemble_convection(state.rho, state.w, dofs);
    Eigen::VectorXd rhs = assemble_rhs(spec, lift, state, energy);

    Eigen::SparseMatrix<double> A = energy.matrix - K;
    A.makeCompressed();
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    lu.compute(A);
    if (lu.info() != Eigen::Success)
        throw std::runtime_error("oseen step: sparse factorization failed");
    Eigen::VectorXd x = lu.solve(rhs);

    const double rhs_norm = std::max(rhs.norm(), 1e-300);
    double residual = (A * x - rhs).norm() / rhs_norm;
    for (int pass = 0; pass < 3 && residual > 1e-14; ++pass) {
        x += lu.solve(rhs - A * x);
        residual = (A * x - rhs).norm() / rhs_norm;
    }
    report.linear_residuals.push_back(residual);
    if (!x.allFinite())
        throw std::runtime_error("oseen step: non-finite linear solution");
    if (residual > kLinearResidualTol) {
        std::ostringstream msg;
        msg << "oseen step: linear residual " << residual << " exceeds " << kLinearResidualTol;
        throw std::runtime_error(msg.str());
    }

    Eigen::VectorXd x_old = dofs_from_field(dofs, state.phi);
    Eigen::VectorXd x_new = x_old + omega * (x - x_old);
    ScalarField phi_next = field_from_dofs(dofs, x_new);
    if (!phi_next.all_finite())
        throw std::runtime_error("oseen step: non-finite iterate");
    return make_state(spec, lift, std::move(phi_next), state.k + 1, prescribed);
}

Solution solve_stream(const ProblemSpec& spec, const PrescribedCoefficients* prescribed) {
    spec.validate();
    if (prescribed) {
        if (prescribed->rho.v.size() != static_cast<std::size_t>(spec.grid.node_count()) ||
            prescribed->mu.v.size() != static_cast<std::size_t>(spec.grid.node_count()))
            throw std::invalid_argument("prescribed coefficient fields do not match grid");
        if (prescribed->mu.min_value() <= 0.0)
            throw std::invalid_argument("prescribed viscosity must be strictly positive");
    }
    const auto t0 = std::chrono::steady_clock::now();

    LiftData lift = build_lift_data(spec);
    IterateState state = initial_state(spec, lift, prescribed);

    RunReport rep;
    double omega = spec.params.omega;
    double first_norm = -1.0;
    int increases = 0;
    bool converged = false;

    for (int k = 0; k < spec.params.max_iter; ++k) {
        IterateState next = oseen_step(spec, lift, state, omega, rep, prescribed);
        const double upd = h2_norm(sub_fields(next.phi, state.phi));
        const double scale = h2_norm(next.phi);
        rep.update_norms.push_back(upd);
        rep.energy.push_back(energy_product(next.mu, next.phi, next.phi));
        state = std::move(next);
        rep.iterations = k + 1;

        if (first_norm < 0.0)
            first_norm = std::max(scale, spec.params.tol_abs);
        else if (scale > kDivergenceFactor * first_norm) {
            std::ostringstream msg;
            msg << "picard iteration diverged: |phi_" << k + 1 << "| = " << scale << " exceeds "
                << kDivergenceFactor << " x first iterate " << first_norm;
            throw std::runtime_error(msg.str());
        }

        if (upd <= spec.params.tol_rel * scale + spec.params.tol_abs) {
            converged = true;
            break;
        }
        const std::size_t n = rep.update_norms.size();
        if (n >= 2 && rep.update_norms[n - 1] > rep.update_norms[n - 2]) {
            if (++increases >= 2) {
                omega = std::max(0.5 * omega, kOmegaFloor);
                increases = 0;
            }
        } else {
            increases = 0;
        }
    }

    rep.converged = converged;
    rep.omega_final = omega;

    const double mu_star = prescribed ? prescribed->mu.min_value() : spec.b.min_value();
    const double mu_sup = prescribed ? prescribed->mu.max_value() : spec.b.max_value();
    const double rho_sup = prescribed ? prescribed->rho.max_value() : spec.eta.max_value();
    const double lift_h2 = h2_norm(lift.field);
    const double force_l2 = spec.force.c1.v.empty() ? 0.0 : l2_norm(spec.force);
    rep.apriori_bound = (rho_sup + 1.0 + mu_sup) / mu_star *
                        (lift_h2 + h2_norm(state.phi) + force_l2) * (1.0 + lift_h2);
    rep.bound_ok = energy_product(state.mu, state.phi, state.phi) <= 10.0 * rep.apriori_bound;

    rep.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                      .count();

    Solution sol;
    sol.grid = spec.grid;
    sol.stream = state.stream;
    sol.phi = state.phi;
    sol.lift = lift.field;
    sol.rho = state.rho;
    sol.mu = state.mu;
    sol.velocity = state.w;
    sol.report = std::move(rep);
    return sol;
}

} // namespace vvs
