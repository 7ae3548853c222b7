#include "vvs/io.hpp"
#include "vvs/picard.hpp"
#include "vvs/reconstruct.hpp"
#include "vvs/symmetric.hpp"
#include "vvs/verify.hpp"

#include <CLI11.hpp>
#include <Eigen/Core>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace vvs;

namespace {

void write_json_file(const fs::path& path, const json& j) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write '" + path.string() + "'");
    out << j.dump(2) << '\n';
}

std::vector<double> sample_points(double lo, double hi, int samples) {
    std::vector<double> xs(static_cast<size_t>(samples));
    for (int k = 0; k < samples; ++k)
        xs[static_cast<size_t>(k)] = lo + (hi - lo) * k / (samples - 1);
    xs.back() = hi;
    return xs;
}

std::vector<double> sample_profile(const PiecewiseProfile& p, const std::vector<double>& xs) {
    std::vector<double> vs;
    vs.reserve(xs.size());
    for (double x : xs) vs.push_back(p.value(x));
    return vs;
}

int cmd_solve(const std::string& config_path, const std::string& out_dir, bool quiet) {
    ProblemSpec spec = load_problem(config_path);
    Solution sol = solve_stream(spec);
    PressureField pressure = pressure_recover(sol.velocity, sol.rho, sol.mu, spec.force);

    fs::path cfg(config_path);
    fs::path dir = out_dir.empty() ? cfg.parent_path() : fs::path(out_dir);
    std::string stem = cfg.stem().string();
    fs::path state_path = dir / (stem + "_state.csv");
    fs::path report_path = dir / (stem + "_report.json");
    write_state_csv(state_path.string(), sol, pressure);
    write_report_json(report_path.string(), sol.report, pressure.compat);
    if (!quiet) {
        std::printf("%s: %s after %d iterations, final update %s, pressure compat %s\n",
                    config_path.c_str(), sol.report.converged ? "converged" : "NOT converged",
                    sol.report.iterations,
                    sol.report.update_norms.empty()
                        ? "n/a"
                        : format_g17(sol.report.update_norms.back()).c_str(),
                    format_g17(pressure.compat).c_str());
        std::printf("wrote %s and %s\n", state_path.string().c_str(),
                    report_path.string().c_str());
    }
    return sol.report.converged ? 0 : 2;
}

struct SymmetricOptions {
    std::string family;
    double a_minus = 1.0, a_plus = 2.0, c1 = 0.0, c0 = 0.0;
    double g_minus = 1.0, g_plus = 2.0;
    bool example = false;
    int samples = 257;
};

int cmd_symmetric(const SymmetricOptions& opt, const std::string& out_dir, bool quiet) {
    fs::path dir = out_dir.empty() ? fs::path(".") : fs::path(out_dir);
    fs::path csv_path = dir / (opt.family + "_profile.csv");
    fs::path report_path = dir / (opt.family + "_report.json");
    json report;
    report["family"] = opt.family;

    if (opt.family == "couette") {
        CouetteConstants cc = couette_constants(opt.a_minus, opt.a_plus, opt.c1);
        double c3 = couette_gauge_C3(opt.a_minus, opt.a_plus, opt.c1, opt.c0);
        PiecewiseProfile mu = couette_mu();
        PiecewiseProfile u1 = couette_profile(cc.C, opt.c1, cc.C2);
        PiecewiseProfile stream = couette_stream(cc.C, opt.c1, cc.C2, c3);
        std::vector<double> xs = sample_points(-1.0, 1.0, opt.samples);
        write_profile_csv(csv_path.string(), {{"x2", xs},
                                              {"mu", sample_profile(mu, xs)},
                                              {"u1", sample_profile(u1, xs)},
                                              {"Phi", sample_profile(stream, xs)}});
        double flux_gap = std::max(
            std::abs(mu.value_from_left(0) * u1.derivative_from_left(0) - opt.c1),
            std::abs(mu.value_from_right(0) * u1.derivative_from_right(0) - opt.c1));
        report["a_minus"] = opt.a_minus;
        report["a_plus"] = opt.a_plus;
        report["C1"] = opt.c1;
        report["C0"] = opt.c0;
        report["C"] = cc.C;
        report["C2"] = cc.C2;
        report["C3"] = c3;
        report["flux_gap"] = flux_gap;
        report["stream_residual"] = symmetric_stream_residual(SymmetricKind::Couette, stream, mu);
    } else if (opt.family == "concentric") {
        ConcentricConstants cc = concentric_constants(opt.g_minus, opt.g_plus, opt.c1);
        PiecewiseProfile mu = concentric_mu();
        PiecewiseProfile gr = concentric_profile(cc.C, opt.c1, cc.C2);
        std::vector<double> xs = sample_points(0.5, 2.0, opt.samples);
        write_profile_csv(csv_path.string(), {{"r", xs},
                                              {"mu", sample_profile(mu, xs)},
                                              {"g", sample_profile(gr, xs)}});
        report["g_minus"] = opt.g_minus;
        report["g_plus"] = opt.g_plus;
        report["C1"] = opt.c1;
        report["C"] = cc.C;
        report["C2"] = cc.C2;
        report["stream_residual"] =
            symmetric_stream_residual(SymmetricKind::Concentric, gr, mu, nullptr, cc.C);
        report["convection_residual"] = concentric_convection_residual(gr);
    } else {
        if (!opt.example) {
            std::fprintf(stderr,
                         "radial: only the closed-form example is available; pass --example\n");
            return 1;
        }
        RadialExample ex = radial_example();
        std::vector<double> xs = sample_points(ex.h.lo, ex.h.hi, opt.samples);
        write_profile_csv(csv_path.string(), {{"theta", xs},
                                              {"mu", sample_profile(ex.mu, xs)},
                                              {"h", sample_profile(ex.h, xs)},
                                              {"rho", sample_profile(ex.rho, xs)}});
        report["C"] = 0.0;
        report["flux"] = ex.mu.value(0.1) * ex.h.derivative(0.1);
        report["h_left"] = ex.h.value(ex.h.lo);
        report["h_right"] = ex.h.value(ex.h.hi);
        report["stream_residual"] =
            symmetric_stream_residual(SymmetricKind::Radial, ex.h, ex.mu, &ex.rho, 0.0);
        report["stress_divergence_residual"] =
            radial_stress_divergence_residual(ex.h, ex.mu);
    }
    write_json_file(report_path, report);
    if (!quiet)
        std::printf("wrote %s and %s\n", csv_path.string().c_str(),
                    report_path.string().c_str());
    return 0;
}

int cmd_mms(int levels, int base, bool constant_mu, const std::string& out_dir, bool quiet) {
    if (levels < 2) {
        std::fprintf(stderr, "mms: need at least 2 levels for an observed order\n");
        return 1;
    }
    std::vector<MmsLevel> rows;
    for (int k = 0; k < levels; ++k) {
        int n = ((base - 1) << k) + 1;
        rows.push_back(run_manufactured_level(n, constant_mu));
        if (!quiet)
            std::printf("n=%4d  stream rel L2 %.6e  velocity rel L2 %.6e  iterations %d\n",
                        rows.back().n, rows.back().stream_err, rows.back().velocity_err,
                        rows.back().iterations);
    }
    std::vector<double> stream_orders, velocity_orders;
    for (size_t k = 0; k + 1 < rows.size(); ++k) {
        stream_orders.push_back(std::log2(rows[k].stream_err / rows[k + 1].stream_err));
        velocity_orders.push_back(std::log2(rows[k].velocity_err / rows[k + 1].velocity_err));
        if (!quiet)
            std::printf("order %d->%d: stream %.3f velocity %.3f\n", rows[k].n, rows[k + 1].n,
                        stream_orders.back(), velocity_orders.back());
    }
    json j;
    j["constant_mu"] = constant_mu;
    j["levels"] = json::array();
    for (const MmsLevel& r : rows)
        j["levels"].push_back({{"n", r.n},
                               {"stream_err", r.stream_err},
                               {"velocity_err", r.velocity_err},
                               {"iterations", r.iterations}});
    j["stream_orders"] = stream_orders;
    j["velocity_orders"] = velocity_orders;
    fs::path dir = out_dir.empty() ? fs::path(".") : fs::path(out_dir);
    fs::path report_path = dir / "mms_report.json";
    write_json_file(report_path, j);
    if (!quiet) std::printf("wrote %s\n", report_path.string().c_str());
    return 0;
}

int cmd_verify(const std::string& out_dir, bool quiet) {
    std::vector<CriterionResult> results =
        run_acceptance(out_dir.empty() ? "." : out_dir, quiet);
    return all_passed(results) ? 0 : 3;
}

} // namespace

int main(int argc, char** argv) {
    if (const char* threads = std::getenv("VVS_THREADS")) {
        int n = std::atoi(threads);
        if (n > 0) Eigen::setNbThreads(n);
    }

    CLI::App app{"Stream-function solver for steady incompressible flow with "
                 "stream-dependent density and density-dependent viscosity"};
    app.require_subcommand(1);
    // Let --out-dir / --quiet appear after the subcommand name as well.
    app.fallthrough();

    std::string out_dir;
    bool quiet = false;
    app.add_option("--out-dir", out_dir, "Directory for output files");
    app.add_flag("--quiet", quiet, "Suppress progress output");

    std::string config_path;
    CLI::App* solve = app.add_subcommand("solve", "Solve a JSON-configured problem");
    solve->add_option("config", config_path, "Path to the JSON config")->required();

    SymmetricOptions sym;
    CLI::App* symmetric =
        app.add_subcommand("symmetric", "Emit closed-form symmetric flow profiles");
    symmetric->add_option("--family", sym.family, "couette, concentric, or radial")
        ->required()
        ->check(CLI::IsMember({"couette", "concentric", "radial"}));
    symmetric->add_option("--a-minus", sym.a_minus, "Bottom wall speed (couette)");
    symmetric->add_option("--a-plus", sym.a_plus, "Top wall speed (couette)");
    symmetric->add_option("--C1", sym.c1, "Flux constant (couette, concentric)");
    symmetric->add_option("--C0", sym.c0, "Stream gauge at the bottom wall (couette)");
    symmetric->add_option("--g-minus", sym.g_minus, "Inner ring rate (concentric)");
    symmetric->add_option("--g-plus", sym.g_plus, "Outer ring rate (concentric)");
    symmetric->add_flag("--example", sym.example, "Closed-form data set (radial)");
    symmetric->add_option("--samples", sym.samples, "Rows in the profile CSV")
        ->check(CLI::Range(9, 1000000));

    int levels = 3, base = 33;
    bool constant_mu = false;
    CLI::App* mms = app.add_subcommand("mms", "Manufactured-solution convergence study");
    mms->add_option("--levels", levels, "Number of doubling grid levels");
    mms->add_option("--base", base, "Coarsest grid size")->check(CLI::Range(9, 4097));
    mms->add_flag("--constant-mu", constant_mu, "Use the constant-viscosity variant");

    CLI::App* verify = app.add_subcommand("verify", "Run the acceptance suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*solve) return cmd_solve(config_path, out_dir, quiet);
        if (*symmetric) return cmd_symmetric(sym, out_dir, quiet);
        if (*mms) return cmd_mms(levels, base, constant_mu, out_dir, quiet);
        if (*verify) return cmd_verify(out_dir, quiet);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 1;
}
