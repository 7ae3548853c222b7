#include "vvs/io.hpp"
#include "vvs/symmetric.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

using namespace vvs;

namespace {

std::string tmp_path(const std::string& name) { return "/tmp/vvs_io_" + name; }

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
}

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("shortest-17-digit formatting round trips bitwise") {
    const double values[] = {0.0,
                             -0.0,
                             0.1,
                             1.0 / 3.0,
                             3.141592653589793,
                             -2.5e17,
                             1e-308,
                             6.02214076e23,
                             std::nextafter(1.0, 2.0),
                             -7.0 / 11.0};
    for (double x : values) {
        std::string s = format_g17(x);
        double back = std::strtod(s.c_str(), nullptr);
        CHECK(back == x);
    }
}

TEST_CASE("config loads grid, boundary, force, closures, and solver knobs") {
    const std::string path = tmp_path("full.json");
    write_text(path, R"({
      "domain": {"x1": [0.0, 1.0], "x2": [-1.0, 1.0]},
      "grid": {"nx": 6, "ny": 5, "periodic_x1": false},
      "boundary": {"C0": 0.75, "u0": {"preset": "zero"}},
      "force": {"preset": "uniform", "value": [0.5, -0.25]},
      "closures": {
        "eta": {"constant": 1.5},
        "b": {"step": {"lo": 1.0, "hi": 2.0, "at": 1.5, "width": 0.2}}
      },
      "solver": {"delta": 0.05, "eps": 0.01, "omega": 0.5, "tol_rel": 1e-6,
                 "tol_abs": 1e-9, "max_iter": 7, "flux_tol": 1e-5}
    })");

    ProblemSpec spec = load_problem(path);
    CHECK(spec.grid.nx == 6);
    CHECK(spec.grid.ny == 5);
    CHECK(spec.grid.x2_min == -1.0);
    CHECK_FALSE(spec.grid.periodic_x1);
    CHECK(spec.C0 == 0.75);
    CHECK(spec.u0_samples.size() == boundary_loop(spec.grid).size());
    for (const auto& s : spec.u0_samples) {
        CHECK(s[0] == 0.0);
        CHECK(s[1] == 0.0);
    }
    REQUIRE_FALSE(spec.force.c1.v.empty());
    for (double v : spec.force.c1.v)
        CHECK(v == 0.5);
    for (double v : spec.force.c2.v)
        CHECK(v == -0.25);
    CHECK(spec.eta.eval(-3.0) == 1.5);
    CHECK(spec.eta.eval(8.0) == 1.5);
    CHECK(spec.b.eval(1.0) == 1.0);
    CHECK(spec.b.eval(2.0) == 2.0);
    CHECK(spec.b.eval(1.5) == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(spec.params.delta == 0.05);
    CHECK(spec.params.eps_mollify == 0.01);
    CHECK(spec.params.omega == 0.5);
    CHECK(spec.params.tol_rel == 1e-6);
    CHECK(spec.params.tol_abs == 1e-9);
    CHECK(spec.params.max_iter == 7);
    CHECK(spec.params.flux_tol == 1e-5);
}

TEST_CASE("config errors are reported as exceptions") {
    const std::string bad = tmp_path("bad.json");
    write_text(bad, "{ this is not json");
    CHECK_THROWS_AS(load_problem(bad), std::runtime_error);

    CHECK_THROWS_AS(load_problem(tmp_path("definitely_missing.json")), std::runtime_error);

    const std::string short_samples = tmp_path("short.json");
    write_text(short_samples, R"({
      "domain": {"x1": [0.0, 1.0], "x2": [0.0, 1.0]},
      "grid": {"nx": 5, "ny": 5},
      "boundary": {"u0": {"samples": [[0,0],[0,0],[0,0]]}},
      "closures": {"eta": {"constant": 1.0}, "b": {"constant": 1.0}}
    })");
    CHECK_THROWS_AS(load_problem(short_samples), std::runtime_error);

    const std::string no_closures = tmp_path("noclosures.json");
    write_text(no_closures, R"({
      "domain": {"x1": [0.0, 1.0], "x2": [0.0, 1.0]},
      "grid": {"nx": 5, "ny": 5},
      "boundary": {"u0": {"preset": "zero"}}
    })");
    CHECK_THROWS_AS(load_problem(no_closures), std::runtime_error);
}

TEST_CASE("shear presets fill boundary data and the density table") {
    const std::string path = tmp_path("shear.json");
    write_text(path, R"({
      "domain": {"x1": [0.0, 1.0], "x2": [-1.0, 1.0]},
      "grid": {"nx": 8, "ny": 9, "periodic_x1": true},
      "boundary": {"C0": 0.0,
                   "u0": {"preset": "couette", "a_minus": 1.0, "a_plus": 2.0, "C1": 0.0}},
      "force": {"preset": "zero"},
      "closures": {
        "eta": {"preset": "couette", "a_minus": 1.0, "a_plus": 2.0, "C1": 0.0,
                "ramp_cells": 2},
        "b": {"breakpoints": [1.0, 2.0], "values": [1.0, 2.0]}
      }
    })");

    ProblemSpec spec = load_problem(path);
    CHECK(spec.force.c1.v.empty());

    std::vector<BoundaryNode> loop = boundary_loop(spec.grid);
    CouetteConstants cc = couette_constants(1.0, 2.0, 0.0);
    PiecewiseProfile u1 = couette_profile(cc.C, 0.0, cc.C2);
    for (size_t k = 0; k < loop.size(); ++k) {
        CHECK(spec.u0_samples[k][0] ==
              doctest::Approx(u1.value(spec.grid.x2(loop[k].j))).epsilon(1e-15));
        CHECK(spec.u0_samples[k][1] == 0.0);
    }

    // Density table: level 1 below the interface stream value, 2 above,
    // ramped over two cells worth of stream change.
    CHECK(spec.eta.min_value() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(spec.eta.max_value() == doctest::Approx(2.0).epsilon(1e-15));
    double c3 = couette_gauge_C3(1.0, 2.0, 0.0, 0.0);
    CHECK(spec.eta.eval(0.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(spec.eta.eval(5.0) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(spec.eta.eval(c3) == doctest::Approx(1.5).epsilon(1e-12));
}

TEST_CASE("profile tables are written deterministically") {
    std::vector<ProfileColumn> cols = {{"x", {0.0, 0.5, 1.0}}, {"u1", {1.0, 3.0, 2.0}}};
    const std::string a = tmp_path("profile_a.csv");
    const std::string b = tmp_path("profile_b.csv");
    write_profile_csv(a, cols);
    write_profile_csv(b, cols);
    std::string ta = read_text(a);
    CHECK(ta == read_text(b));
    CHECK(ta == "x,u1\n0,1\n0.5,3\n1,2\n");

    std::vector<ProfileColumn> ragged = {{"x", {0.0, 1.0}}, {"y", {0.0}}};
    CHECK_THROWS_AS(write_profile_csv(tmp_path("ragged.csv"), ragged), std::invalid_argument);
    CHECK_THROWS_AS(write_profile_csv(tmp_path("empty.csv"), {}), std::invalid_argument);
}

TEST_CASE("state tables reattach the secular pressure slope") {
    Grid g(5, 5, 0.0, 1.0, 0.0, 1.0, false);
    Solution sol;
    sol.grid = g;
    sol.stream = ScalarField(g);
    sol.stream.fill_from([](double x, double y) { return x + y; });
    sol.velocity = VectorField(g);
    sol.velocity.c1 = ScalarField(g, 1.0);
    sol.velocity.c2 = ScalarField(g, -1.0);
    sol.rho = ScalarField(g, 1.25);
    sol.mu = ScalarField(g, 0.5);

    PressureField p;
    p.pi = ScalarField(g, 0.25);
    p.secular_slope = 0.5;

    const std::string a = tmp_path("state_a.csv");
    const std::string b = tmp_path("state_b.csv");
    write_state_csv(a, sol, p);
    write_state_csv(b, sol, p);
    std::string ta = read_text(a);
    CHECK(ta == read_text(b));

    std::istringstream lines(ta);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "x1,x2,Phi,u1,u2,rho,mu,Pi");
    std::getline(lines, line);
    CHECK(line == "0,0,0,1,-1,1.25,0.5,0.25");
    std::getline(lines, line);
    CHECK(line == "0.25,0,0.25,1,-1,1.25,0.5,0.375");
}

TEST_CASE("run reports serialize their diagnostics") {
    RunReport rep;
    rep.iterations = 3;
    rep.update_norms = {1.0, 0.25, 0.05};
    rep.energy = {0.5, 0.75, 0.8};
    rep.linear_residuals = {1e-12, 2e-12, 3e-12};
    rep.apriori_bound = 42.0;
    rep.bound_ok = true;
    rep.converged = true;
    rep.wall_ms = 12.5;
    rep.omega_final = 0.5;

    const std::string path = tmp_path("report.json");
    write_report_json(path, rep, 1.5e-3);

    nlohmann::json j = nlohmann::json::parse(read_text(path));
    CHECK(j["iterations"] == 3);
    CHECK(j["update_norms"].size() == 3);
    CHECK(j["update_norms"][1] == 0.25);
    CHECK(j["energy"][2] == 0.8);
    CHECK(j["apriori_bound"] == 42.0);
    CHECK(j["bound_ok"] == true);
    CHECK(j["converged"] == true);
    CHECK(j["omega_final"] == 0.5);
    CHECK(j["pressure_compat"] == 1.5e-3);
}
