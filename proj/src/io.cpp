#include "vvs/io.hpp"

#include "vvs/symmetric.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace vvs {

using nlohmann::json;

std::string format_g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw std::runtime_error("config " + where + ": " + what);
}

double number_at(const json& j, const std::string& where, const std::string& key) {
    if (!j.contains(key) || !j[key].is_number())
        fail(where, "missing numeric field '" + key + "'");
    return j[key].get<double>();
}

std::vector<double> number_list(const json& j, const std::string& where) {
    if (!j.is_array())
        fail(where, "expected an array of numbers");
    std::vector<double> out;
    out.reserve(j.size());
    for (const auto& e : j) {
        if (!e.is_number())
            fail(where, "expected an array of numbers");
        out.push_back(e.get<double>());
    }
    return out;
}

std::array<double, 2> pair_at(const json& j, const std::string& where) {
    std::vector<double> v = number_list(j, where);
    if (v.size() != 2)
        fail(where, "expected exactly two numbers");
    return {v[0], v[1]};
}

Grid parse_grid(const json& root) {
    if (!root.contains("domain") || !root.contains("grid"))
        fail("top level", "need both 'domain' and 'grid'");
    const json& dom = root["domain"];
    if (!dom.contains("x1") || !dom.contains("x2"))
        fail("domain", "need 'x1' and 'x2' extents");
    auto x1 = pair_at(dom["x1"], "domain.x1");
    auto x2 = pair_at(dom["x2"], "domain.x2");
    const json& gj = root["grid"];
    int nx = static_cast<int>(number_at(gj, "grid", "nx"));
    int ny = static_cast<int>(number_at(gj, "grid", "ny"));
    bool periodic = false;
    if (gj.contains("periodic_x1")) {
        if (!gj["periodic_x1"].is_boolean())
            fail("grid.periodic_x1", "expected a boolean");
        periodic = gj["periodic_x1"].get<bool>();
    }
    try {
        return Grid{nx, ny, x1[0], x1[1], x2[0], x2[1], periodic};
    } catch (const std::exception& e) {
        fail("grid", e.what());
    }
}

std::vector<std::array<double, 2>> parse_u0(const json& bj, const Grid& grid) {
    std::vector<BoundaryNode> loop = boundary_loop(grid);
    std::vector<std::array<double, 2>> u0;
    if (!bj.contains("u0"))
        fail("boundary", "missing 'u0'");
    const json& uj = bj["u0"];
    if (uj.contains("samples")) {
        for (const auto& e : uj["samples"])
            u0.push_back(pair_at(e, "boundary.u0.samples"));
        if (u0.size() != loop.size())
            fail("boundary.u0.samples", "expected " + std::to_string(loop.size()) +
                                            " samples in boundary loop order");
        return u0;
    }
    if (!uj.contains("preset") || !uj["preset"].is_string())
        fail("boundary.u0", "need either 'samples' or a 'preset'");
    const std::string preset = uj["preset"].get<std::string>();
    u0.reserve(loop.size());
    if (preset == "zero") {
        u0.assign(loop.size(), {0.0, 0.0});
    } else if (preset == "uniform") {
        if (!uj.contains("value"))
            fail("boundary.u0", "uniform preset needs 'value'");
        auto v = pair_at(uj["value"], "boundary.u0.value");
        u0.assign(loop.size(), v);
    } else if (preset == "couette") {
        double a_minus = number_at(uj, "boundary.u0", "a_minus");
        double a_plus = number_at(uj, "boundary.u0", "a_plus");
        double c1 = number_at(uj, "boundary.u0", "C1");
        CouetteConstants cc = couette_constants(a_minus, a_plus, c1);
        PiecewiseProfile u1 = couette_profile(cc.C, c1, cc.C2);
        if (grid.x2_min < u1.lo || grid.x2_max > u1.hi)
            fail("boundary.u0", "couette preset needs x2 within [-1, 1]");
        for (const BoundaryNode& b : loop)
            u0.push_back({u1.value(grid.x2(b.j)), 0.0});
    } else {
        fail("boundary.u0", "unknown preset '" + preset + "'");
    }
    return u0;
}

VectorField parse_force(const json& root, const Grid& grid) {
    if (!root.contains("force"))
        return VectorField{};
    const json& fj = root["force"];
    if (fj.contains("samples")) {
        const json& sj = fj["samples"];
        if (!sj.is_array() || sj.size() != static_cast<size_t>(grid.node_count()))
            fail("force.samples", "expected " + std::to_string(grid.node_count()) +
                                      " node samples, row-major bottom to top");
        VectorField f(grid);
        for (int k = 0; k < grid.node_count(); ++k) {
            auto v = pair_at(sj[static_cast<size_t>(k)], "force.samples");
            f.c1.v[static_cast<size_t>(k)] = v[0];
            f.c2.v[static_cast<size_t>(k)] = v[1];
        }
        return f;
    }
    if (!fj.contains("preset") || !fj["preset"].is_string())
        fail("force", "need either 'samples' or a 'preset'");
    const std::string preset = fj["preset"].get<std::string>();
    if (preset == "zero")
        return VectorField{};
    if (preset == "uniform") {
        if (!fj.contains("value"))
            fail("force", "uniform preset needs 'value'");
        auto v = pair_at(fj["value"], "force.value");
        VectorField f(grid);
        f.c1.v.assign(f.c1.v.size(), v[0]);
        f.c2.v.assign(f.c2.v.size(), v[1]);
        return f;
    }
    fail("force", "unknown preset '" + preset + "'");
}

ClosureTable parse_closure(const json& cj, const std::string& where, const Grid& grid,
                           double C0, const ClosureTable* b) {
    if (cj.contains("constant")) {
        if (!cj["constant"].is_number())
            fail(where, "'constant' must be a number");
        return ClosureTable::constant(cj["constant"].get<double>());
    }
    if (cj.contains("step")) {
        const json& sj = cj["step"];
        return ClosureTable::step(number_at(sj, where + ".step", "lo"),
                                  number_at(sj, where + ".step", "hi"),
                                  number_at(sj, where + ".step", "at"),
                                  number_at(sj, where + ".step", "width"));
    }
    if (cj.contains("breakpoints") || cj.contains("values")) {
        if (!cj.contains("breakpoints") || !cj.contains("values"))
            fail(where, "need both 'breakpoints' and 'values'");
        try {
            return ClosureTable(number_list(cj["breakpoints"], where + ".breakpoints"),
                                number_list(cj["values"], where + ".values"));
        } catch (const std::exception& e) {
            fail(where, e.what());
        }
    }
    if (cj.contains("preset") && cj["preset"].is_string()) {
        const std::string preset = cj["preset"].get<std::string>();
        if (preset == "couette") {
            if (b == nullptr)
                fail(where, "couette preset is only available for eta");
            double a_minus = number_at(cj, where, "a_minus");
            double a_plus = number_at(cj, where, "a_plus");
            double c1 = number_at(cj, where, "C1");
            double ramp_cells = cj.contains("ramp_cells")
                                    ? number_at(cj, where, "ramp_cells")
                                    : 2.0;
            double c3 = couette_gauge_C3(a_minus, a_plus, c1, C0);
            double u1_mid = couette_constants(a_minus, a_plus, c1).C2;
            double ramp = u1_mid * ramp_cells * grid.h2();
            try {
                return couette_eta_table(a_minus, a_plus, c1, c3, *b, ramp).eta;
            } catch (const std::exception& e) {
                fail(where, e.what());
            }
        }
        fail(where, "unknown preset '" + preset + "'");
    }
    fail(where, "need 'constant', 'step', 'breakpoints'/'values', or a preset");
}

SolverParams parse_solver(const json& root) {
    SolverParams p;
    if (!root.contains("solver"))
        return p;
    const json& sj = root["solver"];
    auto take = [&](const char* key, auto& slot) {
        if (sj.contains(key)) {
            if (!sj[key].is_number())
                fail(std::string("solver.") + key, "expected a number");
            slot = static_cast<std::remove_reference_t<decltype(slot)>>(
                sj[key].get<double>());
        }
    };
    take("delta", p.delta);
    take("eps", p.eps_mollify);
    take("omega", p.omega);
    take("tol_rel", p.tol_rel);
    take("tol_abs", p.tol_abs);
    take("max_iter", p.max_iter);
    take("flux_tol", p.flux_tol);
    return p;
}

} // namespace

ProblemSpec load_problem(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("config: cannot open '" + path + "'");
    json root;
    try {
        root = json::parse(in);
    } catch (const json::parse_error& e) {
        throw std::runtime_error("config '" + path + "': " + e.what());
    }
    ProblemSpec spec;
    spec.grid = parse_grid(root);
    if (!root.contains("boundary"))
        fail("top level", "missing 'boundary'");
    const json& bj = root["boundary"];
    spec.C0 = bj.contains("C0") ? number_at(bj, "boundary", "C0") : 0.0;
    spec.u0_samples = parse_u0(bj, spec.grid);
    spec.force = parse_force(root, spec.grid);
    if (!root.contains("closures"))
        fail("top level", "missing 'closures'");
    const json& cj = root["closures"];
    if (!cj.contains("eta") || !cj.contains("b"))
        fail("closures", "need both 'eta' and 'b'");
    spec.b = parse_closure(cj["b"], "closures.b", spec.grid, spec.C0, nullptr);
    spec.eta = parse_closure(cj["eta"], "closures.eta", spec.grid, spec.C0, &spec.b);
    spec.params = parse_solver(root);
    return spec;
}

void write_state_csv(const std::string& path, const Solution& sol,
                     const PressureField& pressure) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write '" + path + "'");
    out << "x1,x2,Phi,u1,u2,rho,mu,Pi\n";
    const Grid& g = sol.grid;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            double pi_total = pressure.pi(i, j) + pressure.secular_slope * g.x1(i);
            out << format_g17(g.x1(i)) << ',' << format_g17(g.x2(j)) << ','
                << format_g17(sol.stream(i, j)) << ',' << format_g17(sol.velocity.c1(i, j))
                << ',' << format_g17(sol.velocity.c2(i, j)) << ','
                << format_g17(sol.rho(i, j)) << ',' << format_g17(sol.mu(i, j)) << ','
                << format_g17(pi_total) << '\n';
        }
    if (!out)
        throw std::runtime_error("failed while writing '" + path + "'");
}

void write_report_json(const std::string& path, const RunReport& report,
                       std::optional<double> pressure_compat) {
    json j;
    j["iterations"] = report.iterations;
    j["update_norms"] = report.update_norms;
    j["energy"] = report.energy;
    j["linear_residuals"] = report.linear_residuals;
    j["apriori_bound"] = report.apriori_bound;
    j["bound_ok"] = report.bound_ok;
    j["converged"] = report.converged;
    j["wall_ms"] = report.wall_ms;
    j["omega_final"] = report.omega_final;
    if (pressure_compat)
        j["pressure_compat"] = *pressure_compat;
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write '" + path + "'");
    out << j.dump(2) << '\n';
}

void write_profile_csv(const std::string& path, const std::vector<ProfileColumn>& columns) {
    if (columns.empty())
        throw std::invalid_argument("profile table needs at least one column");
    const size_t rows = columns.front().values.size();
    for (const ProfileColumn& c : columns)
        if (c.values.size() != rows)
            throw std::invalid_argument("profile columns must have equal length");
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write '" + path + "'");
    for (size_t c = 0; c < columns.size(); ++c)
        out << (c ? "," : "") << columns[c].name;
    out << '\n';
    for (size_t r = 0; r < rows; ++r) {
        for (size_t c = 0; c < columns.size(); ++c)
            out << (c ? "," : "") << format_g17(columns[c].values[r]);
        out << '\n';
    }
    if (!out)
        throw std::runtime_error("failed while writing '" + path + "'");
}

} // namespace vvs
