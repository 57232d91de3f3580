#pragma once

// CODATA 2018 values, SI. Exact where the SI defines them so.
namespace nalandau::constants {

inline constexpr double hbar_Js        = 1.054571817e-34;   // reduced Planck constant [J s]
inline constexpr double planck_Js      = 6.62607015e-34;    // Planck constant [J s], exact
inline constexpr double e_charge_C     = 1.602176634e-19;   // elementary charge [C], exact
inline constexpr double c_mps          = 2.99792458e8;      // speed of light [m/s], exact
inline constexpr double m_electron_kg  = 9.1093837015e-31;  // electron mass [kg]
inline constexpr double eV_J           = 1.602176634e-19;   // electron volt [J], exact
inline constexpr double hbar_eVs       = hbar_Js / eV_J;    // [eV s]

} // namespace nalandau::constants
