#include "nalandau/lattice.hpp"

#include <cmath>
#include <stdexcept>

namespace nalandau::lattice {

namespace {
constexpr double pi = 3.14159265358979323846;
const double sqrt3 = std::sqrt(3.0);
} // namespace

HoneycombGeometry HoneycombGeometry::make(double a_m) {
    if (!(a_m > 0.0)) throw std::domain_error("lattice: a must be positive");
    HoneycombGeometry g;
    g.a = a_m;
    g.a1 = {1.5 * a_m, 1.5 * a_m / sqrt3};
    g.a2 = {1.5 * a_m, -1.5 * a_m / sqrt3};
    const double br = 2.0 * pi / (3.0 * a_m);
    g.b1 = {br, br * sqrt3};
    g.b2 = {br, -br * sqrt3};
    g.delta[0] = {0.5 * a_m, 0.5 * a_m * sqrt3};
    g.delta[1] = {0.5 * a_m, -0.5 * a_m * sqrt3};
    g.delta[2] = {-a_m, 0.0};
    g.K = {br, br / sqrt3};
    g.Kprime = {br, -br / sqrt3};
    return g;
}

double structure_factor(const HoneycombGeometry& g, Vec2 k) {
    const double f = 3.0 + 4.0 * std::cos(1.5 * k.x * g.a) * std::cos(0.5 * sqrt3 * k.y * g.a) +
                     2.0 * std::cos(sqrt3 * k.y * g.a);
    if (f < -1e-9) throw std::logic_error("lattice: structure factor below zero");
    return f < 0.0 ? 0.0 : f;
}

BandPair band_energies(const HoneycombGeometry& g, const units::LatticeParams& lp,
                       Vec2 k) {
    const double f = structure_factor(g, k);
    const double root = std::sqrt(f);
    BandPair bp;
    bp.E_plus = lp.t_eV * root - lp.tprime_eV * (f - 3.0);
    bp.E_minus = -lp.t_eV * root - lp.tprime_eV * (f - 3.0);
    return bp;
}

double expansion_residual(const HoneycombGeometry& g, const units::LatticeParams& lp,
                          Valley v, Vec2 krel, int s) {
    if (s != 1 && s != -1) throw std::invalid_argument("lattice: s must be +1 or -1");
    const Vec2 base = (v == Valley::K) ? g.K : g.Kprime;
    const BandPair bp = band_energies(g, lp, base + krel);
    const double exact = (s == 1) ? bp.E_plus : bp.E_minus;
    const double kk = std::sqrt(dot(krel, krel));
    double theta = (kk == 0.0) ? 0.0 : std::atan2(krel.y, krel.x);
    if (v == Valley::Kprime) theta = -theta;
    const double a = g.a;
    const double approx = 3.0 * lp.tprime_eV + s * lp.t_eV * 1.5 * a * kk -
                          s * lp.t_eV * 0.375 * a * a * kk * kk * std::sin(3.0 * theta) -
                          2.25 * lp.tprime_eV * a * a * kk * kk;
    return exact - approx;
}

std::vector<BandScanRow> scan_path(const HoneycombGeometry& g,
                                   const units::LatticeParams& lp,
                                   const std::vector<Vec2>& waypoints, int n) {
    if (waypoints.size() < 2) throw std::invalid_argument("lattice: need >= 2 waypoints");
    if (n < 2) throw std::invalid_argument("lattice: need >= 2 samples");
    std::vector<double> seglen(waypoints.size() - 1);
    double total = 0.0;
    for (size_t i = 0; i + 1 < waypoints.size(); i++) {
        const Vec2 d = waypoints[i + 1] - waypoints[i];
        seglen[i] = std::sqrt(dot(d, d));
        total += seglen[i];
    }
    if (total == 0.0) throw std::invalid_argument("lattice: degenerate path");
    std::vector<BandScanRow> rows;
    rows.reserve(n);
    for (int i = 0; i < n; i++) {
        double target = total * i / (n - 1);
        size_t seg = 0;
        while (seg + 1 < seglen.size() && target > seglen[seg]) {
            target -= seglen[seg];
            seg++;
        }
        const double frac = seglen[seg] == 0.0 ? 0.0 : target / seglen[seg];
        const Vec2 k = waypoints[seg] + frac * (waypoints[seg + 1] - waypoints[seg]);
        const BandPair bp = band_energies(g, lp, k);
        rows.push_back({k.x, k.y, bp.E_plus, bp.E_minus});
    }
    return rows;
}

std::vector<BandScanRow> scan_grid(const HoneycombGeometry& g,
                                   const units::LatticeParams& lp, int n1, int n2) {
    if (n1 < 1 || n2 < 1) throw std::invalid_argument("lattice: grid must be >= 1x1");
    std::vector<BandScanRow> rows;
    rows.reserve(static_cast<size_t>(n1) * n2);
    for (int i = 0; i < n1; i++) {
        for (int j = 0; j < n2; j++) {
            const double u = static_cast<double>(i) / n1;
            const double v = static_cast<double>(j) / n2;
            const Vec2 k = u * g.b1 + v * g.b2;
            const BandPair bp = band_energies(g, lp, k);
            rows.push_back({k.x, k.y, bp.E_plus, bp.E_minus});
        }
    }
    return rows;
}

namespace {

// gradient and Hessian of f(k)
void f_derivatives(const HoneycombGeometry& g, Vec2 k, Vec2& grad,
                   double& h11, double& h12, double& h22) {
    const double a = g.a;
    const double al = 1.5 * k.x * a;
    const double be = 0.5 * sqrt3 * k.y * a;
    const double ca = std::cos(al), sa = std::sin(al);
    const double cb = std::cos(be), sb = std::sin(be);
    const double dadx = 1.5 * a, dbdy = 0.5 * sqrt3 * a;
    grad.x = -4.0 * sa * cb * dadx;
    grad.y = (-4.0 * ca * sb - 4.0 * std::sin(2.0 * be)) * dbdy;
    h11 = -4.0 * ca * cb * dadx * dadx;
    h12 = 4.0 * sa * sb * dadx * dbdy;
    h22 = (-4.0 * ca * cb - 8.0 * std::cos(2.0 * be)) * dbdy * dbdy;
}

Vec2 newton_minimize(const HoneycombGeometry& g, Vec2 k0) {
    Vec2 k = k0;
    for (int it = 0; it < 60; it++) {
        Vec2 grad;
        double h11, h12, h22;
        f_derivatives(g, k, grad, h11, h12, h22);
        const double det = h11 * h22 - h12 * h12;
        if (det == 0.0) break;
        const double dx = (h22 * grad.x - h12 * grad.y) / det;
        const double dy = (h11 * grad.y - h12 * grad.x) / det;
        k.x -= dx;
        k.y -= dy;
        if (std::hypot(dx, dy) < 1e-16 / g.a) break;
    }
    return k;
}

// reduce k into the image closest to target by subtracting reciprocal vectors
Vec2 reduce_near(const HoneycombGeometry& g, Vec2 k, Vec2 target) {
    // coordinates in the (b1, b2) basis: k = u b1 + v b2
    const double det = g.b1.x * g.b2.y - g.b1.y * g.b2.x;
    const Vec2 d = k - target;
    const double u = (d.x * g.b2.y - d.y * g.b2.x) / det;
    const double v = (g.b1.x * d.y - g.b1.y * d.x) / det;
    const double ru = std::round(u), rv = std::round(v);
    return k - ru * g.b1 - rv * g.b2;
}

} // namespace

std::pair<Vec2, Vec2> dirac_points_numeric(const HoneycombGeometry& g) {
    // coarse scan of the primitive cell, keep the two lowest separated minima
    const int N = 72;
    Vec2 best1{}, best2{};
    double f1 = 1e300, f2 = 1e300;
    for (int i = 0; i < N; i++) {
        for (int j = 0; j < N; j++) {
            const Vec2 k = (static_cast<double>(i) / N) * g.b1 +
                           (static_cast<double>(j) / N) * g.b2;
            const double f = structure_factor(g, k);
            const Vec2 r1 = reduce_near(g, k, g.K);
            const Vec2 d1 = r1 - g.K;
            const Vec2 r2 = reduce_near(g, k, g.Kprime);
            const Vec2 d2 = r2 - g.Kprime;
            if (dot(d1, d1) < dot(d2, d2)) {
                if (f < f1) { f1 = f; best1 = k; }
            } else {
                if (f < f2) { f2 = f; best2 = k; }
            }
        }
    }
    const Vec2 m1 = reduce_near(g, newton_minimize(g, best1), g.K);
    const Vec2 m2 = reduce_near(g, newton_minimize(g, best2), g.Kprime);
    return {m1, m2};
}

} // namespace nalandau::lattice
