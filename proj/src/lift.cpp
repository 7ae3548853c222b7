#include "vvs/lift.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace vvs {

namespace {

struct Segment {
    int a, b;                      // loop indices
    std::array<double, 2> normal;
    double len;
};

// Segment normals come from the geometry (horizontal run -> wall normal by
// row), so corner nodes contribute to both adjacent edges with the proper
// normal on each side.
std::vector<Segment> loop_segments(const Grid& g, const std::vector<BoundaryNode>& loop) {
    std::vector<Segment> segs;
    const int n = static_cast<int>(loop.size());
    segs.reserve(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k) {
        const BoundaryNode& p = loop[static_cast<size_t>(k)];
        const BoundaryNode& q = loop[static_cast<size_t>((k + 1) % n)];
        Segment s;
        s.a = k;
        s.b = (k + 1) % n;
        if (p.j == q.j) {
            s.normal = {0.0, p.j == 0 ? -1.0 : 1.0};
            s.len = g.h1();
        } else {
            s.normal = {p.i == 0 ? -1.0 : 1.0, 0.0};
            s.len = g.h2();
        }
        segs.push_back(s);
    }
    return segs;
}

} // namespace

double check_flux(const std::vector<std::array<double, 2>>& u0_samples, const Grid& g) {
    auto loop = boundary_loop(g);
    if (u0_samples.size() != loop.size())
        throw std::invalid_argument("check_flux: need one velocity sample per boundary node");
    double flux = 0.0;
    for (const Segment& s : loop_segments(g, loop)) {
        double ua = u0_samples[static_cast<size_t>(s.a)][0] * s.normal[0] +
                    u0_samples[static_cast<size_t>(s.a)][1] * s.normal[1];
        double ub = u0_samples[static_cast<size_t>(s.b)][0] * s.normal[0] +
                    u0_samples[static_cast<size_t>(s.b)][1] * s.normal[1];
        flux += 0.5 * (ua + ub) * s.len;
    }
    return flux;
}

BoundaryTrace boundary_stream(const std::vector<std::array<double, 2>>& u0_samples,
                              const Grid& g, double C0, double flux_tol) {
    double flux = check_flux(u0_samples, g);
    if (std::abs(flux) > flux_tol)
        throw std::invalid_argument("boundary_stream: boundary flux " + std::to_string(flux) +
                                    " exceeds tolerance");
    BoundaryTrace t;
    t.grid = g;
    t.loop = boundary_loop(g);
    t.u0 = u0_samples;
    t.C0 = C0;
    const int n = static_cast<int>(t.loop.size());
    t.value.assign(static_cast<size_t>(n), 0.0);
    t.value[0] = C0;
    auto segs = loop_segments(g, t.loop);
    for (int k = 0; k < n; ++k) {
        const Segment& s = segs[static_cast<size_t>(k)];
        double ua = u0_samples[static_cast<size_t>(s.a)][0] * s.normal[0] +
                    u0_samples[static_cast<size_t>(s.a)][1] * s.normal[1];
        double ub = u0_samples[static_cast<size_t>(s.b)][0] * s.normal[0] +
                    u0_samples[static_cast<size_t>(s.b)][1] * s.normal[1];
        double next = t.value[static_cast<size_t>(s.a)] - 0.5 * (ua + ub) * s.len;
        if (s.b == 0)
            t.closure_defect = next - C0;
        else
            t.value[static_cast<size_t>(s.b)] = next;
    }

    t.value_bottom.assign(static_cast<size_t>(g.nx), 0.0);
    t.value_top.assign(static_cast<size_t>(g.nx), 0.0);
    t.value_left.assign(static_cast<size_t>(g.ny), 0.0);
    t.value_right.assign(static_cast<size_t>(g.ny), 0.0);
    t.slope_bottom.assign(static_cast<size_t>(g.nx), 0.0);
    t.slope_top.assign(static_cast<size_t>(g.nx), 0.0);
    t.slope_left.assign(static_cast<size_t>(g.ny), 0.0);
    t.slope_right.assign(static_cast<size_t>(g.ny), 0.0);
    for (int k = 0; k < n; ++k) {
        const BoundaryNode& b = t.loop[static_cast<size_t>(k)];
        double v = t.value[static_cast<size_t>(k)];
        double u1 = u0_samples[static_cast<size_t>(k)][0];
        double u2 = u0_samples[static_cast<size_t>(k)][1];
        // Inward slope per wall: -u0 . tau with the wall's own tangent.
        if (b.j == 0) {
            t.value_bottom[static_cast<size_t>(b.i)] = v;
            t.slope_bottom[static_cast<size_t>(b.i)] = u1;
        }
        if (b.j == g.ny - 1) {
            t.value_top[static_cast<size_t>(b.i)] = v;
            t.slope_top[static_cast<size_t>(b.i)] = -u1;
        }
        if (b.i == 0) {
            t.value_left[static_cast<size_t>(b.j)] = v;
            t.slope_left[static_cast<size_t>(b.j)] = -u2;
        }
        if (b.i == g.nx - 1) {
            t.value_right[static_cast<size_t>(b.j)] = v;
            t.slope_right[static_cast<size_t>(b.j)] = u2;
        }
    }
    return t;
}

double cutoff(double dist, double delta) {
    double t = dist / delta;
    if (t <= 0.0)
        return 1.0;
    if (t >= 1.0)
        return 0.0;
    return 1.0 - (3.0 * t * t - 2.0 * t * t * t);
}

double lift_value(const BoundaryTrace& trace, double delta, double x1, double x2) {
    const Grid& g = trace.grid;
    const double h1 = g.h1(), h2 = g.h2();

    struct Candidate {
        double d;
        double v;
        double s;
        double sigma;
    };
    auto along_x = [&](double x) {
        int i = static_cast<int>(std::lround((x - g.x1_min) / h1));
        if (g.periodic_x1)
            i = g.wrap(i);
        return std::clamp(i, 0, g.nx - 1);
    };
    auto along_y = [&](double y) {
        int j = static_cast<int>(std::lround((y - g.x2_min) / h2));
        return std::clamp(j, 0, g.ny - 1);
    };

    std::vector<Candidate> cands;
    {
        int i = along_x(x1);
        // Arc coordinates follow the loop (left up, top right, right down,
        // bottom left), so ties prefer the earlier edge in that order.
        cands.push_back({x2 - g.x2_min, trace.value_bottom[static_cast<size_t>(i)],
                         trace.slope_bottom[static_cast<size_t>(i)],
                         2.0 * (g.ny - 1) * h2 + (g.nx - 1) * h1 + (g.nx - 1 - i) * h1});
        cands.push_back({g.x2_max - x2, trace.value_top[static_cast<size_t>(i)],
                         trace.slope_top[static_cast<size_t>(i)],
                         (g.ny - 1) * h2 + i * h1});
    }
    if (!g.periodic_x1) {
        int j = along_y(x2);
        cands.push_back({x1 - g.x1_min, trace.value_left[static_cast<size_t>(j)],
                         trace.slope_left[static_cast<size_t>(j)], j * h2});
        cands.push_back({g.x1_max - x1, trace.value_right[static_cast<size_t>(j)],
                         trace.slope_right[static_cast<size_t>(j)],
                         (g.ny - 1) * h2 + (g.nx - 1) * h1 + (g.ny - 1 - j) * h2});
    }
    const Candidate* best = &cands[0];
    for (const Candidate& c : cands)
        if (c.d < best->d - 1e-14 * (h1 + h2) ||
            (std::abs(c.d - best->d) <= 1e-14 * (h1 + h2) && c.sigma < best->sigma))
            best = &c;
    return (best->v + best->d * best->s) * cutoff(best->d, delta);
}

ScalarField build_lift(const BoundaryTrace& trace, double delta) {
    const Grid& g = trace.grid;
    if (!(delta > 0.0))
        throw std::invalid_argument("build_lift: delta must be positive");
    ScalarField f(g);
    f.fill_from([&](double x, double y) { return lift_value(trace, delta, x, y); });
    return f;
}

ExtendedField build_lift_extended(const BoundaryTrace& trace, double delta) {
    const Grid& g = trace.grid;
    ExtendedField f(g);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            f.at(i, j) = lift_value(trace, delta, g.x1_min + i * g.h1(), g.x2_min + j * g.h2());
    // Ghost rule: inner value minus 2h times the inward slope, the same
    // reflection the clamped interior space uses plus the inhomogeneous term,
    // so the composite stream keeps its second-order continuation across walls
    // and central differences recover the wall velocity exactly.
    const double h1 = g.h1(), h2 = g.h2();
    for (int i = 0; i < g.nx; ++i) {
        f.at(i, -1) = f.at(i, 1) - 2.0 * h2 * trace.slope_bottom[static_cast<size_t>(i)];
        f.at(i, g.ny) = f.at(i, g.ny - 2) - 2.0 * h2 * trace.slope_top[static_cast<size_t>(i)];
    }
    for (int j = -1; j <= g.ny; ++j) {
        if (g.periodic_x1) {
            f.at(-1, j) = f.at(g.nx - 2, j);
            f.at(g.nx, j) = f.at(1, j);
        } else {
            int jr = std::clamp(j, 0, g.ny - 1);
            f.at(-1, j) = f.at(1, j) - 2.0 * h1 * trace.slope_left[static_cast<size_t>(jr)];
            f.at(g.nx, j) =
                f.at(g.nx - 2, j) - 2.0 * h1 * trace.slope_right[static_cast<size_t>(jr)];
        }
    }
    return f;
}

ScalarField mollify(const ScalarField& f, double eps) {
    const Grid& g = f.grid;
    if (eps < 0.0)
        throw std::invalid_argument("mollify: eps must be nonnegative");

    auto pass = [&](const ScalarField& in, bool along_x1) {
        const double h = along_x1 ? g.h1() : g.h2();
        const int K = static_cast<int>(std::floor(eps / h + 1e-12));
        if (K < 1)
            return in;
        std::vector<double> w(static_cast<size_t>(2 * K + 1));
        for (int k = -K; k <= K; ++k)
            w[static_cast<size_t>(k + K)] = std::exp(-2.0 * (k * h) * (k * h) / (eps * eps));
        ScalarField out(g);
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.unique_nx(); ++i) {
                double acc = 0.0, wsum = 0.0;
                for (int k = -K; k <= K; ++k) {
                    int ii = i, jj = j;
                    if (along_x1) {
                        ii = i + k;
                        if (g.periodic_x1)
                            ii = g.wrap(ii);
                        else if (ii < 0 || ii > g.nx - 1)
                            continue;
                    } else {
                        jj = j + k;
                        if (jj < 0 || jj > g.ny - 1)
                            continue;
                    }
                    acc += w[static_cast<size_t>(k + K)] * in(ii, jj);
                    wsum += w[static_cast<size_t>(k + K)];
                }
                out(i, j) = acc / wsum;
            }
        out.sync_periodic();
        return out;
    };

    return pass(pass(f, true), false);
}

} // namespace vvs
