#pragma once

#include <complex>
#include <vector>

#include "nalandau/landau.hpp"
#include "nalandau/units.hpp"

// Finite-temperature determinant per Landau level through the Hurwitz zeta
// function, and the T = 0 Hall staircase obtained by counting levels between
// 0 and mu. All energies in eps_B units; beta_int = beta * eps_B.
namespace nalandau::zetahall {

using cplx = std::complex<double>;

// Euler-Maclaurin continuation, Re(a) > 0 (else std::domain_error), u != 1.
// Target accuracy ~1e-12 relative over the regions exercised here.
cplx hurwitz_zeta(cplx u, cplx a);

// d/du zeta(u,a) at u = 0; equals log Gamma(a) - (1/2) log(2 pi).
cplx hurwitz_zeta_du0(cplx a);

// log Gamma for Re(z) > 0 (Lanczos g = 7)
cplx log_gamma(cplx z);

// log(2 cosh(y)) without overflow
double log_2cosh(double y);

struct Thermo {
    double mu_int = 0.0;   // chemical potential [eps_B]
    double beta_int = 0.0; // beta * eps_B, > 0
};

// Zeta-regularized log-determinant contribution of one level: the Matsubara
// sum is split into the two phase factors e^{-+ i pi u/2} with the Hurwitz
// argument rotated into Re(a) = 1/2 > 0, evaluated at u = 0. The raw
// -d/du value is log(2cosh(y)) - y with y = beta(mu-E)/2; the returned value
// carries the +y counterterm that symmetrizes it to the even closed form
// log(2cosh(beta(mu-E)/2)). The analytic continuation vanishes at u = 0, so
// the result does not depend on the reference scale lambda.
double level_logdet(double E_int, const Thermo& tp, double lambda_scale = 1.0);

// Fermi factor (1/2)(1 + tanh(beta(mu-E)/2)). Relates to the determinant by
// occupation = 1/2 + (1/beta) d(level_logdet)/dmu (the even form counts
// relative to half filling).
double occupation(double E_int, const Thermo& tp);

// ---- merged two-valley spectrum and Hall conductivity ----

struct SpectrumTable {
    std::vector<landau::LandauLevel> levels;  // ascending energy_int
    double cover_pos = 0.0;  // largest energy up to which the table is complete
    double cover_neg = 0.0;
    double margin = 2.0;     // extra eps_B required between |mu| and the cover
    double epsB_eV = 0.0;
    double B_T = 0.0;
    int spin_factor = 2;
    int n_max = 0;
};

SpectrumTable build_spectrum_table(const units::ModelParams& mp, int n_max);

// smallest n_max with sqrt(2(n+1)) > mu_max_int + 2
int required_nmax(double mu_max_int);

// sigma_xy in e^2/h: spin_factor * [#(0 < E < mu) - #(mu < E < 0)], strict
// inequalities, each table level counted once. mu outside the covered window
// (minus margin) raises std::domain_error.
double hall_sigma_e2h(const SpectrumTable& table, double mu_int);

// finite-T version, spin_factor * sum_E [occ(E; mu) - occ(E; 0)]
double hall_sigma_e2h_finiteT(const SpectrumTable& table, double mu_int,
                              double beta_int);

struct ConductivityCurve {
    std::vector<double> mu_int, mu_eV;
    std::vector<double> sigma_e2h;
    std::vector<double> reduced;          // h sigma_xy / (4 e^2)
    std::vector<double> plateau_edges_int; // level energies inside the window
};

ConductivityCurve hall_curve(const SpectrumTable& table,
                             const std::vector<double>& mu_grid_int);

} // namespace nalandau::zetahall
