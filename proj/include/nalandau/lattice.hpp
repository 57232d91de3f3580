#pragma once

#include <array>
#include <vector>

#include "nalandau/units.hpp"

// Tight-binding bands on the honeycomb lattice and their expansion around the
// band-touching points.
namespace nalandau::lattice {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }

struct HoneycombGeometry {
    double a = 0.0;                // nearest-neighbour distance [m]
    Vec2 a1, a2;                   // primitive vectors
    Vec2 b1, b2;                   // reciprocal vectors, dot(a_i,b_j) = 2 pi delta_ij
    std::array<Vec2, 3> delta;     // nearest-neighbour displacements
    Vec2 K, Kprime;                // band-touching points

    static HoneycombGeometry make(double a_m);
};

// f(k) = 3 + 4 cos(3 k1 a/2) cos(sqrt3 k2 a/2) + 2 cos(sqrt3 k2 a).
// Clamped at zero; values below -1e-9 would mean a broken formula and throw.
double structure_factor(const HoneycombGeometry& g, Vec2 k);

struct BandPair {
    double E_plus = 0.0;   // +t sqrt(f) - t' (f - 3)   [eV]
    double E_minus = 0.0;  // -t sqrt(f) - t' (f - 3)
};

BandPair band_energies(const HoneycombGeometry& g, const units::LatticeParams& lp,
                       Vec2 k);

enum class Valley { K, Kprime };

// E_s(valley + krel) minus the displayed expansion
//   3 t' + s t (3a/2)|k| - s t (3a^2/8) k^2 sin(3 theta) - (9 t' a^2/4) k^2,
// theta measured from the k1 axis (atan2; krel = 0 gives theta = 0 and a zero
// residual). Around K' the angle enters reflected, theta -> -theta.
// s must be +1 or -1. The residual is O(|k|^3).
double expansion_residual(const HoneycombGeometry& g, const units::LatticeParams& lp,
                          Valley v, Vec2 krel, int s);

struct BandScanRow {
    double k1 = 0.0, k2 = 0.0;       // [1/m]
    double E_plus = 0.0, E_minus = 0.0;  // [eV]
};

// Polyline sampling: n points distributed along the waypoint path
// (arc-length uniform), endpoints included.
std::vector<BandScanRow> scan_path(const HoneycombGeometry& g,
                                   const units::LatticeParams& lp,
                                   const std::vector<Vec2>& waypoints, int n);

// Uniform grid over the primitive reciprocal cell k = u b1 + v b2,
// u,v in [0,1), n1 x n2 points.
std::vector<BandScanRow> scan_grid(const HoneycombGeometry& g,
                                   const units::LatticeParams& lp, int n1, int n2);

// Locates both minima of f by coarse grid search plus Newton polish on the
// analytic gradient, then reduces them modulo the reciprocal lattice to the
// images nearest the analytic K and K'. first = near K, second = near K'.
std::pair<Vec2, Vec2> dirac_points_numeric(const HoneycombGeometry& g);

} // namespace nalandau::lattice
