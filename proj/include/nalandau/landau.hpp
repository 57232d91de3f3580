#pragma once

#include <array>
#include <complex>
#include <vector>

#include "nalandau/oscillator.hpp"
#include "nalandau/units.hpp"

// Closed-form Landau spectrum and eigenfunctions of
//   H = (p - eA)^2/(2m) + vF sigma.(p - eA),  A = B x1 e2.
// Energies are handled in eps_B units, lengths in lB, with
// z = m vF lB / hbar carrying the mass sign. One code path covers both mass
// signs; the zero mode is a distinguished state.
namespace nalandau::landau {

using cplx = std::complex<double>;

enum class Valley { K, Kprime };

struct LandauLevel {
    Valley valley = Valley::K;
    int n = 0;               // oscillator index; 0 for the zero mode
    int s = 0;               // branch +1/-1; 0 for the zero mode
    bool is_zero_mode = false;
    double energy_int = 0.0;  // eps_B units
    double energy_eV = 0.0;
    double degeneracy_per_area = 0.0;  // eB/h [1/m^2], spin not included
};

// E_{n,s} = (1/z) [ n+1 + (s/2) sqrt(1 + 8 z^2 (n+1)) ], eps_B units.
// n >= 0, s = +-1; z = 0 raises std::domain_error (massless limit is a
// separate regime, see limit_energy).
double level_energy(int n, int s, const units::ModelParams& mp);

// E_0 = eps_B/(2z): fixed by eB/(2m) alone, independent of vF.
double zero_mode_energy(const units::ModelParams& mp);

enum class Regime { LargeZ, SmallZ, Massless };

// Leading behavior of E_{n,s}:
//   LargeZ:  s sqrt(2(n+1)) + (n+1)/z
//   SmallZ:  (1/z)(n + 1 + s/2) + 2 s z (n+1)
//   Massless: s sqrt(2(n+1))
double limit_energy(int n, int s, const units::ModelParams& mp, Regime regime);

// Eigenstate in the Landau gauge, expressed on the orthonormal Hermite
// functions of q = sqrt(eB) (x1 - k/(eB)): upper component on phi_{n+1},
// lower on phi_n with amplitude ratio (i/2z)(1 - s sqrt(1+8z^2(n+1))).
// K_norm is the normalization of the raw Hermite form
// (H_{n+1}, (i/2z)(1 - s sqrt(..)) H_n) e^{-q^2/2}.
struct SpinorState {
    bool is_zero_mode = false;
    int n = 0, s = 0;
    double k = 0.0;       // transverse momentum [1/lB]
    double center = 0.0;  // guiding center k lB^2, in lB units equals k
    int upper_index = 1;  // oscillator index of the upper component
    int lower_index = 0;  // -1 when absent (zero mode)
    cplx c_upper{1.0, 0.0};
    cplx c_lower{0.0, 0.0};
    double K_norm = 0.0;
    double energy_int = 0.0;
};

SpinorState eigenstate(int n, int s, double k, const units::ModelParams& mp);
SpinorState zero_mode_state(double k, const units::ModelParams& mp);

// wavefunction components at q (relative to the guiding center)
cplx state_upper(const SpinorState& st, double q);
cplx state_lower(const SpinorState& st, double q);

// All levels of one valley up to n_max plus the zero mode. The K' spectrum is
// the exact negation of K (H_K' = -s2 H_K s2); eigenfunctions map by s2.
std::vector<LandauLevel> valley_spectrum(Valley v, int n_max,
                                         const units::ModelParams& mp);

// ---- free (B = 0) dispersion ----
// Reduced units: momentum in |m| vF / hbar, energy in |m| vF^2.
struct FreeMode {
    double k1 = 0.0, k2 = 0.0;
    int branch = 0;  // +1/-1, helicity
    double energy = 0.0;
    std::array<cplx, 2> spinor{};
};

// E_{+-}(k) = sign_mass k^2/2 +- |k|; spinors are helicity eigenvectors
// (1, +- e^{i theta})/sqrt2. k = 0 returns the basis spinors (1,0), (0,1).
std::array<FreeMode, 2> free_dispersion(double k1, double k2, int sign_mass);

// Continuum Bloch matrix in the same reduced units:
//   K:  sign_mass k^2/2 + sigma.k      K': -(sign_mass k^2/2) + sigma*.k
// row-major 2x2.
std::array<cplx, 4> bloch_matrix(Valley v, double k1, double k2, int sign_mass);

// ---- operator-level maps ----

// -s2 H s2 (the K' operator when H is the K one)
osc::OperatorMatrix valley_transform_sigma2(const osc::OperatorMatrix& H);

// TP image of the operator: complex conjugation acting on the explicit spinor
// structure (the Hermitian kinetic blocks ride along as real symbols),
// sandwiched with sigma1. Block-wise this swaps the two diagonal spinor
// blocks and keeps the off-diagonal ones. The free Bloch matrices satisfy the
// literal entrywise version sigma1 h* sigma1 = h; see bloch_matrix.
osc::OperatorMatrix tp_conjugate(const osc::OperatorMatrix& H);

// ---- conserved current of a stationary state ----
// Dimensionless profiles over q: j0 in units of e, j1/j2 in units of e vF.
//   j0 = |Phi|^2
//   j1 = (1/2z) i (Phi'^+ Phi - Phi^+ Phi') + Phi^+ s1 Phi
//   j2 = -(q/z) |Phi|^2 + Phi^+ s2 Phi
// Derivatives come from the Hermite recurrences. The grid must be uniform and
// span [-8, 8] around the center, else std::domain_error.
struct CurrentDensity {
    std::vector<double> q;
    std::vector<double> j0, j1, j2;
};

CurrentDensity current_density(const SpinorState& st, const std::vector<double>& q_grid,
                               const units::ModelParams& mp);

} // namespace nalandau::landau
