#include "vvs/symmetric.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace vvs {

namespace {

double horner(const std::vector<double>& c, double x) {
    double r = 0.0;
    for (size_t k = c.size(); k-- > 0;) r = r * x + c[k];
    return r;
}

double horner_derivative(const std::vector<double>& c, double x) {
    double r = 0.0;
    for (size_t k = c.size(); k-- > 1;) r = r * x + static_cast<double>(k) * c[k];
    return r;
}

double horner_second(const std::vector<double>& c, double x) {
    double r = 0.0;
    for (size_t k = c.size(); k-- > 2;) r = r * x + static_cast<double>(k * (k - 1)) * c[k];
    return r;
}

} // namespace

double ProfilePiece::value(double x) const {
    switch (form) {
        case PieceForm::Poly: return horner(coef, x);
        case PieceForm::Annular: return coef[0] + coef[1] * std::log(x) + coef[2] / (x * x);
        case PieceForm::Reciprocal: return coef[0] / (coef[1] + coef[2] * x);
    }
    return 0.0;
}

double ProfilePiece::derivative(double x) const {
    switch (form) {
        case PieceForm::Poly: return horner_derivative(coef, x);
        case PieceForm::Annular: return coef[1] / x - 2.0 * coef[2] / (x * x * x);
        case PieceForm::Reciprocal: {
            double d = coef[1] + coef[2] * x;
            return -coef[0] * coef[2] / (d * d);
        }
    }
    return 0.0;
}

double ProfilePiece::second_derivative(double x) const {
    switch (form) {
        case PieceForm::Poly: return horner_second(coef, x);
        case PieceForm::Annular: return -coef[1] / (x * x) + 6.0 * coef[2] / (x * x * x * x);
        case PieceForm::Reciprocal: {
            double d = coef[1] + coef[2] * x;
            return 2.0 * coef[0] * coef[2] * coef[2] / (d * d * d);
        }
    }
    return 0.0;
}

int PiecewiseProfile::piece_index(double x) const {
    int p = static_cast<int>(std::upper_bound(breakpoints.begin(), breakpoints.end(), x) -
                             breakpoints.begin());
    if (p > 0 && x == breakpoints[static_cast<size_t>(p) - 1] &&
        !attach_right[static_cast<size_t>(p) - 1])
        --p;
    return p;
}

namespace {

const ProfilePiece& select_piece(const PiecewiseProfile& pr, double x) {
    if (pr.coord == ProfileCoord::R && x <= 0.0)
        throw std::invalid_argument("profile evaluated at a non-positive radius");
    double tol = 1e-9 * std::max(1.0, pr.hi - pr.lo);
    if (x < pr.lo - tol || x > pr.hi + tol)
        throw std::invalid_argument("profile evaluated outside its interval");
    return pr.pieces[static_cast<size_t>(pr.piece_index(x))];
}

} // namespace

double PiecewiseProfile::value(double x) const { return select_piece(*this, x).value(x); }
double PiecewiseProfile::derivative(double x) const { return select_piece(*this, x).derivative(x); }
double PiecewiseProfile::second_derivative(double x) const {
    return select_piece(*this, x).second_derivative(x);
}

double PiecewiseProfile::value_from_left(int bp) const {
    return pieces[static_cast<size_t>(bp)].value(breakpoints[static_cast<size_t>(bp)]);
}
double PiecewiseProfile::value_from_right(int bp) const {
    return pieces[static_cast<size_t>(bp) + 1].value(breakpoints[static_cast<size_t>(bp)]);
}
double PiecewiseProfile::derivative_from_left(int bp) const {
    return pieces[static_cast<size_t>(bp)].derivative(breakpoints[static_cast<size_t>(bp)]);
}
double PiecewiseProfile::derivative_from_right(int bp) const {
    return pieces[static_cast<size_t>(bp) + 1].derivative(breakpoints[static_cast<size_t>(bp)]);
}

PiecewiseProfile PiecewiseProfile::from_samples(ProfileCoord coord, const std::vector<double>& xs,
                                                const std::vector<double>& vs) {
    if (xs.size() < 2 || xs.size() != vs.size())
        throw std::invalid_argument("from_samples needs two matching sample arrays");
    PiecewiseProfile p;
    p.coord = coord;
    p.lo = xs.front();
    p.hi = xs.back();
    p.pieces.reserve(xs.size() - 1);
    for (size_t k = 0; k + 1 < xs.size(); ++k) {
        double slope = (vs[k + 1] - vs[k]) / (xs[k + 1] - xs[k]);
        p.pieces.push_back({PieceForm::Poly, {vs[k] - slope * xs[k], slope}});
        if (k + 2 < xs.size()) {
            p.breakpoints.push_back(xs[k + 1]);
            p.attach_right.push_back(true);
        }
    }
    return p;
}

PiecewiseProfile constant_profile(ProfileCoord coord, double lo, double hi, double value) {
    PiecewiseProfile p;
    p.coord = coord;
    p.lo = lo;
    p.hi = hi;
    p.pieces = {{PieceForm::Poly, {value}}};
    return p;
}

CouetteConstants couette_constants(double a_minus, double a_plus, double C1) {
    return {4.0 * (a_minus - a_plus) + 6.0 * C1, 2.0 * a_plus - a_minus - 2.0 * C1};
}

PiecewiseProfile couette_mu() {
    PiecewiseProfile p;
    p.coord = ProfileCoord::X2;
    p.lo = -1.0;
    p.hi = 1.0;
    p.breakpoints = {0.0};
    p.attach_right = {false};
    p.pieces = {{PieceForm::Poly, {1.0}}, {PieceForm::Poly, {2.0}}};
    return p;
}

PiecewiseProfile couette_profile(double C, double C1, double C2) {
    PiecewiseProfile p;
    p.coord = ProfileCoord::X2;
    p.lo = -1.0;
    p.hi = 1.0;
    p.breakpoints = {0.0};
    p.attach_right = {false};
    p.pieces = {{PieceForm::Poly, {C2, C1, C / 2.0}}, {PieceForm::Poly, {C2, C1 / 2.0, C / 4.0}}};
    return p;
}

PiecewiseProfile couette_stream(double C, double C1, double C2, double C3) {
    PiecewiseProfile p;
    p.coord = ProfileCoord::X2;
    p.lo = -1.0;
    p.hi = 1.0;
    p.breakpoints = {0.0};
    p.attach_right = {false};
    p.pieces = {{PieceForm::Poly, {C3, C2, C1 / 2.0, C / 6.0}},
                {PieceForm::Poly, {C3, C2, C1 / 4.0, C / 12.0}}};
    return p;
}

double couette_gauge_C3(double a_minus, double a_plus, double C1, double C0) {
    return C0 + (4.0 / 3.0) * a_plus - a_minus / 3.0 - 1.5 * C1;
}

namespace {

bool piecewise_constant(const PiecewiseProfile& p) {
    for (const auto& piece : p.pieces) {
        if (piece.form != PieceForm::Poly || piece.coef.empty()) return false;
        for (size_t k = 1; k < piece.coef.size(); ++k)
            if (piece.coef[k] != 0.0) return false;
    }
    return true;
}

// Sample grid over [lo, hi] with a node placed exactly at the anchor.
std::vector<double> anchored_grid(double lo, double hi, double anchor, int n) {
    double target = (hi - lo) / n;
    int ml = std::max(1, static_cast<int>(std::ceil((anchor - lo) / target)));
    int mr = std::max(1, static_cast<int>(std::ceil((hi - anchor) / target)));
    std::vector<double> xs;
    xs.reserve(static_cast<size_t>(ml + mr) + 1);
    double hl = (anchor - lo) / ml;
    for (int k = ml; k >= 1; --k) xs.push_back(anchor - k * hl);
    xs.front() = lo;
    xs.push_back(anchor);
    double hr = (hi - anchor) / mr;
    for (int k = 1; k <= mr; ++k) xs.push_back(anchor + k * hr);
    xs.back() = hi;
    return xs;
}

// Cumulative trapezoid of f over xs, zero at index i0.
std::vector<double> trapezoid_from(const std::vector<double>& xs, size_t i0,
                                   const std::function<double(double)>& f) {
    std::vector<double> fs(xs.size()), vs(xs.size(), 0.0);
    for (size_t k = 0; k < xs.size(); ++k) fs[k] = f(xs[k]);
    for (size_t k = i0; k + 1 < xs.size(); ++k)
        vs[k + 1] = vs[k] + 0.5 * (fs[k] + fs[k + 1]) * (xs[k + 1] - xs[k]);
    for (size_t k = i0; k-- > 0;)
        vs[k] = vs[k + 1] - 0.5 * (fs[k] + fs[k + 1]) * (xs[k + 1] - xs[k]);
    return vs;
}

} // namespace

PiecewiseProfile couette_ode(const PiecewiseProfile& mu, double C, double C1, double C2) {
    if (mu.lo > 0.0 || mu.hi < 0.0)
        throw std::invalid_argument("couette_ode anchors the quadrature at x2 = 0");
    if (piecewise_constant(mu)) {
        PiecewiseProfile out;
        out.coord = ProfileCoord::X2;
        out.lo = mu.lo;
        out.hi = mu.hi;
        out.breakpoints = mu.breakpoints;
        out.attach_right = mu.attach_right;
        out.pieces.resize(mu.pieces.size());
        int p0 = mu.piece_index(0.0);
        auto slope_coeffs = [&](int k, double& a1, double& a2) {
            double m = mu.pieces[static_cast<size_t>(k)].coef[0];
            if (m <= 0.0) throw std::invalid_argument("couette_ode needs a positive viscosity");
            a1 = C1 / m;
            a2 = C / (2.0 * m);
        };
        auto anchor_piece = [&](int k, double xa, double va) {
            double a1 = 0.0, a2 = 0.0;
            slope_coeffs(k, a1, a2);
            out.pieces[static_cast<size_t>(k)] = {PieceForm::Poly,
                                                  {va - (a1 + a2 * xa) * xa, a1, a2}};
        };
        anchor_piece(p0, 0.0, C2);
        for (int k = p0 + 1; k < static_cast<int>(out.pieces.size()); ++k) {
            double b = out.breakpoints[static_cast<size_t>(k) - 1];
            double v = b == 0.0 ? C2 : out.pieces[static_cast<size_t>(k) - 1].value(b);
            anchor_piece(k, b, v);
        }
        for (int k = p0 - 1; k >= 0; --k) {
            double b = out.breakpoints[static_cast<size_t>(k)];
            double v = b == 0.0 ? C2 : out.pieces[static_cast<size_t>(k) + 1].value(b);
            anchor_piece(k, b, v);
        }
        return out;
    }
    auto xs = anchored_grid(mu.lo, mu.hi, 0.0, 4096);
    size_t i0 = static_cast<size_t>(std::find(xs.begin(), xs.end(), 0.0) - xs.begin());
    auto vs = trapezoid_from(xs, i0, [&](double s) {
        double m = mu.value(s);
        if (m <= 0.0) throw std::invalid_argument("couette_ode needs a positive viscosity");
        return (C * s + C1) / m;
    });
    for (auto& v : vs) v += C2;
    return PiecewiseProfile::from_samples(ProfileCoord::X2, xs, vs);
}

namespace {

double quad_min_on(double a0, double a1, double a2, double lo, double hi) {
    double m = std::min(a0 + (a1 + a2 * lo) * lo, a0 + (a1 + a2 * hi) * hi);
    if (a2 > 0.0) {
        double xs = -a1 / (2.0 * a2);
        if (xs > lo && xs < hi) m = std::min(m, a0 + (a1 + a2 * xs) * xs);
    }
    return m;
}

} // namespace

CouetteEta couette_eta_table(double a_minus, double a_plus, double C1, double C3,
                             const ClosureTable& b, double ramp_width) {
    auto [C, C2] = couette_constants(a_minus, a_plus, C1);
    double min_below = quad_min_on(C2, C1, C / 2.0, -1.0, 0.0);
    double min_above = quad_min_on(C2, C1 / 2.0, C / 4.0, 0.0, 1.0);
    if (std::min(min_below, min_above) <= 0.0)
        throw std::invalid_argument(
            "couette_eta_table: the wall data does not give a positive velocity, so the "
            "stream trace is not monotone");
    double phi_minus = 1.5 * C1 + C3 - (4.0 / 3.0) * a_plus + a_minus / 3.0;
    double phi_plus = -1.25 * C1 + C3 + (5.0 / 3.0) * a_plus - (2.0 / 3.0) * a_minus;
    if (!(ramp_width > 0.0) || 0.5 * ramp_width >= std::min(phi_plus - C3, C3 - phi_minus))
        throw std::invalid_argument(
            "couette_eta_table: the ramp must be positive and fit strictly between the wall "
            "stream values");
    return {ClosureTable::step(b.inverse(1.0), b.inverse(2.0), C3, ramp_width), phi_minus,
            phi_plus};
}

ConcentricConstants concentric_constants(double g_minus, double g_plus, double C1) {
    double C = 4.0 / (3.0 * std::numbers::ln2) * (1.125 * C1 - g_plus + g_minus);
    double C2 = (1.125 * C1 + g_plus + 2.0 * g_minus) / 3.0;
    return {C, C2};
}

PiecewiseProfile concentric_mu() {
    PiecewiseProfile p;
    p.coord = ProfileCoord::R;
    p.lo = 0.5;
    p.hi = 2.0;
    p.breakpoints = {1.0};
    p.attach_right = {true};
    p.pieces = {{PieceForm::Poly, {2.0}}, {PieceForm::Poly, {1.0}}};
    return p;
}

PiecewiseProfile concentric_profile(double C, double C1, double C2) {
    PiecewiseProfile p;
    p.coord = ProfileCoord::R;
    p.lo = 0.5;
    p.hi = 2.0;
    p.breakpoints = {1.0};
    p.attach_right = {true};
    p.pieces = {{PieceForm::Annular, {C2 + C1 / 4.0, -(C / 4.0), -(C1 / 4.0)}},
                {PieceForm::Annular, {C2 + C1 / 2.0, -(C / 2.0), -(C1 / 2.0)}}};
    return p;
}

PiecewiseProfile concentric_ode(const PiecewiseProfile& mu, double C, double C1, double C2) {
    if (mu.lo > 1.0 || mu.hi < 1.0)
        throw std::invalid_argument("concentric_ode anchors the quadrature at r = 1");
    if (mu.lo <= 0.0) throw std::invalid_argument("concentric_ode needs positive radii");
    if (piecewise_constant(mu)) {
        PiecewiseProfile out;
        out.coord = ProfileCoord::R;
        out.lo = mu.lo;
        out.hi = mu.hi;
        out.breakpoints = mu.breakpoints;
        out.attach_right = mu.attach_right;
        out.pieces.resize(mu.pieces.size());
        int p0 = mu.piece_index(1.0);
        auto anchor_piece = [&](int k, double ra, double va) {
            double m = mu.pieces[static_cast<size_t>(k)].coef[0];
            if (m <= 0.0) throw std::invalid_argument("concentric_ode needs a positive viscosity");
            double c1 = -(C / (2.0 * m));
            double c2 = -(C1 / (2.0 * m));
            out.pieces[static_cast<size_t>(k)] = {
                PieceForm::Annular, {va - c1 * std::log(ra) - c2 / (ra * ra), c1, c2}};
        };
        anchor_piece(p0, 1.0, C2);
        for (int k = p0 + 1; k < static_cast<int>(out.pieces.size()); ++k) {
            double b = out.breakpoints[static_cast<size_t>(k) - 1];
            double v = b == 1.0 ? C2 : out.pieces[static_cast<size_t>(k) - 1].value(b);
            anchor_piece(k, b, v);
        }
        for (int k = p0 - 1; k >= 0; --k) {
            double b = out.breakpoints[static_cast<size_t>(k)];
            double v = b == 1.0 ? C2 : out.pieces[static_cast<size_t>(k) + 1].value(b);
            anchor_piece(k, b, v);
        }
        return out;
    }
    auto xs = anchored_grid(mu.lo, mu.hi, 1.0, 4096);
    size_t i0 = static_cast<size_t>(std::find(xs.begin(), xs.end(), 1.0) - xs.begin());
    auto vs = trapezoid_from(xs, i0, [&](double s) {
        double m = mu.value(s);
        if (m <= 0.0) throw std::invalid_argument("concentric_ode needs a positive viscosity");
        return (C1 - 0.5 * C * s * s) / (m * s * s * s);
    });
    for (auto& v : vs) v += C2;
    return PiecewiseProfile::from_samples(ProfileCoord::R, xs, vs);
}

RadialExample radial_example() {
    constexpr double pi = std::numbers::pi;
    RadialExample ex;
    ex.h.coord = ProfileCoord::Theta;
    ex.h.lo = 0.0;
    ex.h.hi = pi / 2.0;
    ex.h.breakpoints = {pi / 4.0};
    ex.h.attach_right = {true};
    ex.h.pieces = {{PieceForm::Poly, {-pi / 2.0, -1.0}}, {PieceForm::Poly, {-pi / 4.0, -2.0}}};

    ex.rho = ex.h;
    ex.rho.pieces = {{PieceForm::Reciprocal, {8.0, pi / 2.0, 1.0}},
                     {PieceForm::Reciprocal, {4.0, pi / 4.0, 2.0}}};

    ex.mu = ex.h;
    ex.mu.pieces = {{PieceForm::Poly, {2.0}}, {PieceForm::Poly, {1.0}}};
    return ex;
}

PiecewiseProfile radial_bvp(const PiecewiseProfile& rho, const PiecewiseProfile& mu, double C,
                            double h_left, double h_right, int n_theta) {
    if (n_theta < 16) throw std::invalid_argument("radial_bvp needs n_theta >= 16");
    double lo = mu.lo, hi = mu.hi;
    if (std::abs(rho.lo - lo) > 1e-12 || std::abs(rho.hi - hi) > 1e-12)
        throw std::invalid_argument("radial_bvp profiles must share one interval");
    int n = n_theta;
    double dt = (hi - lo) / n;
    std::vector<double> theta(static_cast<size_t>(n) + 1), rh(theta.size()), mh(theta.size());
    std::vector<double> mhalf(static_cast<size_t>(n));
    for (int i = 0; i <= n; ++i) theta[static_cast<size_t>(i)] = lo + i * dt;
    theta.back() = hi;
    for (size_t i = 0; i < theta.size(); ++i) {
        rh[i] = rho.value(theta[i]);
        mh[i] = mu.value(theta[i]);
    }
    for (int i = 0; i < n; ++i) mhalf[static_cast<size_t>(i)] = mu.value(lo + (i + 0.5) * dt);

    std::vector<double> h(theta.size());
    for (int i = 0; i <= n; ++i)
        h[static_cast<size_t>(i)] = h_left + (h_right - h_left) * (static_cast<double>(i) / n);
    h.front() = h_left;
    h.back() = h_right;

    auto residual = [&](const std::vector<double>& y, std::vector<double>& F) {
        double worst = 0.0;
        for (size_t i = 1; i + 1 < y.size(); ++i) {
            double flux = (mhalf[i] * (y[i + 1] - y[i]) - mhalf[i - 1] * (y[i] - y[i - 1])) /
                          (dt * dt);
            F[i] = rh[i] * y[i] * y[i] + flux + 4.0 * mh[i] * y[i] - C;
            worst = std::max(worst, std::abs(F[i]));
        }
        return worst;
    };

    std::vector<double> F(theta.size(), 0.0), Fnew(theta.size(), 0.0), ynew(theta.size());
    std::vector<double> sub(theta.size()), diag(theta.size()), sup(theta.size()),
        rhs(theta.size()), step(theta.size(), 0.0);
    std::vector<double> trace;

    // Evaluating the flux difference rounds an O(eps |y|) cancellation and
    // divides it by dt^2, so the residual cannot drop below this scale no
    // matter how accurate y is. Accept a stall there as converged.
    double stiff = 0.0;
    for (double m : mhalf) stiff = std::max(stiff, m);
    auto noise_floor = [&](const std::vector<double>& y) {
        double ymax = 1.0;
        for (double v : y) ymax = std::max(ymax, std::abs(v));
        return 4.0 * std::numeric_limits<double>::epsilon() * stiff * ymax / (dt * dt);
    };

    double rn = residual(h, F);
    for (int it = 0; it <= 50; ++it) {
        trace.push_back(rn);
        if (rn <= 1e-10 || (it > 0 && rn <= noise_floor(h)))
            return PiecewiseProfile::from_samples(ProfileCoord::Theta, theta, h);
        if (it == 50) break;
        for (size_t i = 1; i + 1 < h.size(); ++i) {
            sub[i] = mhalf[i - 1] / (dt * dt);
            sup[i] = mhalf[i] / (dt * dt);
            diag[i] = 2.0 * rh[i] * h[i] + 4.0 * mh[i] - (mhalf[i] + mhalf[i - 1]) / (dt * dt);
            rhs[i] = -F[i];
        }
        for (size_t i = 2; i + 1 < h.size(); ++i) {
            double w = sub[i] / diag[i - 1];
            diag[i] -= w * sup[i - 1];
            rhs[i] -= w * rhs[i - 1];
        }
        size_t last = h.size() - 2;
        step[last] = rhs[last] / diag[last];
        for (size_t i = last; i-- > 1;) step[i] = (rhs[i] - sup[i] * step[i + 1]) / diag[i];
        step.front() = step.back() = 0.0;

        bool accepted = false;
        double t = 1.0;
        for (int k = 0; k < 30 && !accepted; ++k) {
            for (size_t i = 0; i < h.size(); ++i) ynew[i] = h[i] + t * step[i];
            double rn_new = residual(ynew, Fnew);
            if (rn_new < rn) {
                h.swap(ynew);
                F.swap(Fnew);
                rn = rn_new;
                accepted = true;
            }
            t *= 0.5;
        }
        if (!accepted) {
            if (rn <= noise_floor(h))
                return PiecewiseProfile::from_samples(ProfileCoord::Theta, theta, h);
            break;
        }
    }
    std::ostringstream os;
    os << "radial_bvp: damped Newton did not reach 1e-10; residual trace:";
    for (double v : trace) os << ' ' << v;
    throw std::runtime_error(os.str());
}

double symmetric_stream_residual(SymmetricKind kind, const PiecewiseProfile& profile,
                                 const PiecewiseProfile& mu, const PiecewiseProfile* rho,
                                 double C) {
    const int n = 512;
    double lo = profile.lo, hi = profile.hi;
    double h = (hi - lo) / n;
    std::vector<double> x(static_cast<size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) x[static_cast<size_t>(i)] = lo + i * h;
    x.back() = hi;

    std::vector<double> bps = profile.breakpoints;
    bps.insert(bps.end(), mu.breakpoints.begin(), mu.breakpoints.end());
    if (rho) bps.insert(bps.end(), rho->breakpoints.begin(), rho->breakpoints.end());
    auto clear_of_breaks = [&](double xi) {
        for (double b : bps)
            if (std::abs(xi - b) <= 1.5 * h) return false;
        return true;
    };

    std::vector<double> flux(x.size());
    for (size_t i = 0; i < x.size(); ++i) {
        double xi = x[i];
        switch (kind) {
            case SymmetricKind::Couette:
                flux[i] = mu.value(xi) * profile.second_derivative(xi);
                break;
            case SymmetricKind::Concentric:
                flux[i] = mu.value(xi) * xi * xi * xi * profile.derivative(xi);
                break;
            case SymmetricKind::Radial:
                flux[i] = mu.value(xi) * profile.derivative(xi);
                break;
        }
    }

    std::vector<double> lhs;
    std::vector<size_t> used;
    for (size_t i = 1; i + 1 < x.size(); ++i) {
        if (!clear_of_breaks(x[i])) continue;
        used.push_back(i);
        switch (kind) {
            case SymmetricKind::Couette:
            case SymmetricKind::Concentric:
                lhs.push_back((flux[i + 1] - 2.0 * flux[i] + flux[i - 1]) / (h * h));
                break;
            case SymmetricKind::Radial: {
                if (!rho)
                    throw std::invalid_argument(
                        "symmetric_stream_residual needs a density profile for the radial kind");
                double v = profile.value(x[i]);
                lhs.push_back(rho->value(x[i]) * v * v +
                              (flux[i + 1] - flux[i - 1]) / (2.0 * h) +
                              4.0 * mu.value(x[i]) * v);
                break;
            }
        }
    }

    double target = 0.0;
    if (kind == SymmetricKind::Concentric) {
        if (std::isnan(C)) {
            double s = 0.0;
            for (size_t k = 0; k < lhs.size(); ++k) s += lhs[k];
            target = lhs.empty() ? 0.0 : s / static_cast<double>(lhs.size());
        } else {
            target = -C;
        }
    } else if (kind == SymmetricKind::Radial) {
        if (std::isnan(C)) {
            double s = 0.0;
            for (size_t k = 0; k < lhs.size(); ++k) s += lhs[k];
            target = lhs.empty() ? 0.0 : s / static_cast<double>(lhs.size());
        } else {
            target = C;
        }
    }

    double worst = 0.0, scale = 1.0;
    for (size_t k = 0; k < lhs.size(); ++k) worst = std::max(worst, std::abs(lhs[k] - target));
    for (size_t k : used) scale = std::max(scale, std::abs(flux[k]));
    return worst / scale;
}

double concentric_convection_residual(const PiecewiseProfile& g) {
    const double delta = 1e-5;
    auto vel = [&](double X, double Y, int k) {
        double gv = g.value(std::hypot(X, Y));
        return k == 0 ? gv * Y : -gv * X;
    };
    double worst = 0.0, scale = 1.0;
    for (int a = 0; a < 6; ++a) {
        double r = g.lo + 0.05 * (g.hi - g.lo) + a * 0.9 * (g.hi - g.lo) / 5.0;
        bool near = false;
        for (double b : g.breakpoints) near = near || std::abs(r - b) < 1e-3;
        if (near) continue;
        for (double t : {0.3, 1.1, 2.0, 2.9, 4.0, 5.3}) {
            double X = r * std::cos(t), Y = r * std::sin(t);
            double u1 = vel(X, Y, 0), u2 = vel(X, Y, 1);
            for (int k = 0; k < 2; ++k) {
                double d1 = (vel(X + delta, Y, k) - vel(X - delta, Y, k)) / (2.0 * delta);
                double d2 = (vel(X, Y + delta, k) - vel(X, Y - delta, k)) / (2.0 * delta);
                double conv = u1 * d1 + u2 * d2;
                double gv = g.value(r);
                double ref = -gv * gv * (k == 0 ? X : Y);
                worst = std::max(worst, std::abs(conv - ref));
                scale = std::max(scale, std::abs(ref));
            }
        }
    }
    return worst / scale;
}

double radial_stress_divergence_residual(const PiecewiseProfile& h, const PiecewiseProfile& mu) {
    const double delta = 1e-5;
    // Cartesian components of u = (h(theta)/r) e_r with theta the standard
    // counterclockwise polar angle: u_i = h(theta) x_i / r^2.
    auto stress = [&](double X, double Y, int row, int col) {
        double r2 = X * X + Y * Y;
        double th = std::atan2(Y, X);
        double hv = h.value(th), hd = h.derivative(th);
        double th1 = -Y / r2, th2 = X / r2;
        double g11 = hd * th1 * X / r2 + hv * (r2 - 2.0 * X * X) / (r2 * r2);
        double g12 = hd * th2 * X / r2 - 2.0 * hv * X * Y / (r2 * r2);
        double g21 = hd * th1 * Y / r2 - 2.0 * hv * X * Y / (r2 * r2);
        double g22 = hd * th2 * Y / r2 + hv * (r2 - 2.0 * Y * Y) / (r2 * r2);
        double muv = mu.value(th);
        if (row == 0) return muv * (col == 0 ? 2.0 * g11 : g12 + g21);
        return muv * (col == 0 ? g12 + g21 : 2.0 * g22);
    };
    double worst = 0.0, scale = 1.0;
    for (double r : {1.1, 1.4, 1.8}) {
        for (int a = 0; a < 6; ++a) {
            double th = h.lo + 0.05 * (h.hi - h.lo) + a * 0.9 * (h.hi - h.lo) / 5.0;
            bool near = false;
            for (double b : h.breakpoints) near = near || std::abs(th - b) < 1e-2;
            for (double b : mu.breakpoints) near = near || std::abs(th - b) < 1e-2;
            if (near) continue;
            double X = r * std::cos(th), Y = r * std::sin(th);
            double er1 = std::cos(th), er2 = std::sin(th);
            double et1 = -std::sin(th), et2 = std::cos(th);
            double muv = mu.value(th);
            // Closed form within viscosity pieces, written in the (e_r, e_theta)
            // frame with the counterclockwise tangent: the azimuthal
            // coefficient +2 mu h'/r^3 is the one whose mixed pressure
            // derivatives close the reduced equation
            // rho h^2 + (mu h')' + 4 mu h = C.
            double radial = muv * h.second_derivative(th) / (r * r * r);
            double azimuthal = 2.0 * muv * h.derivative(th) / (r * r * r);
            double ref1 = radial * er1 + azimuthal * et1;
            double ref2 = radial * er2 + azimuthal * et2;
            double div1 = (stress(X + delta, Y, 0, 0) - stress(X - delta, Y, 0, 0) +
                           stress(X, Y + delta, 0, 1) - stress(X, Y - delta, 0, 1)) /
                          (2.0 * delta);
            double div2 = (stress(X + delta, Y, 1, 0) - stress(X - delta, Y, 1, 0) +
                           stress(X, Y + delta, 1, 1) - stress(X, Y - delta, 1, 1)) /
                          (2.0 * delta);
            worst = std::max(worst, std::max(std::abs(div1 - ref1), std::abs(div2 - ref2)));
            scale = std::max(scale, std::max(std::abs(ref1), std::abs(ref2)));
        }
    }
    return worst / scale;
}

} // namespace vvs
