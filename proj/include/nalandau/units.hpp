#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "nalandau/constants.hpp"

// Boundary between SI/eV inputs and the dimensionless internal units used by
// every other module: energies in eps_B = hbar*vF/lB, lengths in lB.
namespace nalandau::units {

struct LatticeParams {
    double a_m = 0.0;        // nearest-neighbour distance [m]
    double t_eV = 0.0;       // nearest-neighbour hopping [eV]
    double tprime_eV = 0.0;  // next-to-nearest hopping [eV]
};

struct FieldParams {
    double B_T = 0.0;    // magnetic field [T], perpendicular
    double E_Vpm = 0.0;  // in-plane electric field [V/m]
};

struct Continuum {
    double vF_mps = 0.0;   // Fermi velocity [m/s]
    double mass_kg = 0.0;  // signed effective mass [kg]; -inf when tprime = 0
    bool mass_finite = true;
};

struct ModelParams {
    double vF_mps = 0.0;
    double mass_kg = 0.0;  // signed
    double B_T = 0.0;
    double E_Vpm = 0.0;
    double z = 0.0;        // m*vF*lB/hbar, signed
    double w = 0.0;        // |z|
    double epsB_eV = 0.0;  // hbar*vF/lB
    double lB_m = 0.0;     // sqrt(hbar/(eB))
    int spin_degeneracy = 2;
};

// vF = 3*a*t/(2*hbar); m = -2*hbar^2/(9*t'*a^2). tprime = 0 marks the mass
// infinite instead of throwing.
Continuum map_lattice_to_continuum(const LatticeParams& lp);

// Magnetic scales require B > 0 and finite mass; violations raise
// std::domain_error.
ModelParams derive_model(double vF_mps, double mass_kg, const FieldParams& fp);

// Convenience: fix the model from the dimensionless pair (eps_B, z) at given B.
ModelParams derive_model_from_scales(double epsB_eV, double z, const FieldParams& fp);

double energy_to_internal(double E_eV, const ModelParams& mp);
double energy_from_internal(double E_int, const ModelParams& mp);
double length_to_internal(double x_m, const ModelParams& mp);
double length_from_internal(double x_int, const ModelParams& mp);

// Landau-level degeneracy per unit area, eB/h [1/m^2] (spin not included).
double degeneracy_per_area(const ModelParams& mp);

// key=value config. Recognized keys: a_angstrom, t_eV, tprime_eV, B_tesla,
// E_voltperm, vF_over_c (optional override), mass_eV (optional m*c^2 override,
// signed). '#' starts a comment. Unknown keys and malformed lines throw
// std::runtime_error with the offending line.
struct Config {
    LatticeParams lattice;
    FieldParams field;
    std::optional<double> vF_over_c;
    std::optional<double> mass_eV;
};

Config parse_config(std::istream& in);
Config load_config(const std::string& path);

// Overrides win over the lattice map when present.
ModelParams build_model(const Config& cfg);

// Reference graphene working point quoted alongside the model
// (a = 1.42 A, t = 2.8 eV, t' = 0.1 eV, B = 10 T). The quoted velocity,
// mass and w are mutually inconsistent with the mapping formulas above
// (the formulas give vF/c = 3.02e-3, m/m_e = -8.4, w = 533), so these
// numbers are kept for side-by-side comparison only and are never asserted
// by the numerical tests. The energy values follow from (eps_B, w) alone
// and are exercised with those scales as direct inputs.
namespace reference_point {
inline constexpr double a_angstrom = 1.42;
inline constexpr double t_eV = 2.8;
inline constexpr double tprime_eV = 0.1;
inline constexpr double B_tesla = 10.0;
inline constexpr double vF_over_c_quoted = 2.0e-3;
inline constexpr double mass_over_me_quoted = 32.9;
inline constexpr double w_quoted = 1.0e3;
inline constexpr double epsB_eV_quoted = 4.87e-2;
inline constexpr double E0_eV_quoted = -2.43e-5;      // zero mode, hole-like mass
inline constexpr double E0plus_eV_quoted = -6.89e-2;  // (n=0, s=+1) level
inline constexpr bool quoted_scales_consistent = false;
} // namespace reference_point

} // namespace nalandau::units
