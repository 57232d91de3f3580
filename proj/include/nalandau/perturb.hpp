#pragma once

#include <array>
#include <complex>
#include <vector>

#include "nalandau/landau.hpp"
#include "nalandau/oscillator.hpp"
#include "nalandau/units.hpp"

// Rotational-symmetry-breaking quadratic perturbation
//   DH = h + h^dagger,  h = pref * q [4p^2 - (p^2+q^2)] [p^2+q^2]^{-1} [p s1 - q s2]
// with pref = -(a/lB)/8 in eps_B units, plus the crossed electric/magnetic
// field shift. First-order diagonal elements vanish: every ordering leaves
// the q integrand odd. The inverse bracket acts as diag(1/(2n+1)) on the
// oscillator basis, never as a grid inverse.
namespace nalandau::perturb {

using cplx = std::complex<double>;

// Position of the single q factor; bracket -> inverse -> spinor order fixed.
enum class FactorOrder { PrefixQ, AfterBracket, AfterInverse, SuffixQ };

inline constexpr std::array<FactorOrder, 4> all_factor_orders{
    FactorOrder::PrefixQ, FactorOrder::AfterBracket, FactorOrder::AfterInverse,
    FactorOrder::SuffixQ};

struct PerturbationSpec {
    double strength_prefactor = 0.0;  // -(a/8) vF sqrt(eB) in eps_B units
    FactorOrder factor_order = FactorOrder::PrefixQ;
    int quadrature_order = 64;  // raised internally to 2(max(n,n')+3) if below
};

PerturbationSpec make_perturbation_spec(double a_m, const units::ModelParams& mp);

// ---- free (B = 0) check ----

// Applies the momentum-space symbol of DH to the helicity spinor at kvec and
// returns the max deviation from -s (3/8) t a^2 k^2 sin(3 theta) times the
// spinor [eV]. kvec = 0 raises std::domain_error (the inverse momentum is
// undefined there).
double free_perturbation_check(double k1, double k2, int s,
                               const units::LatticeParams& lp);

// the closed-form shift itself [eV]
double free_quadratic_shift(double k1, double k2, int s,
                            const units::LatticeParams& lp);

// ---- coefficient-space machinery on the oscillator basis ----

struct CoeffSpinor {
    std::vector<cplx> up, lo;
};

CoeffSpinor state_coefficients(const landau::SpinorState& st, int nosc);

// banded single-operator applications (index overflow beyond the vector end
// is dropped; callers keep enough headroom that nothing nonzero is lost)
std::vector<cplx> apply_q_coeff(const std::vector<cplx>& in);
std::vector<cplx> apply_p2_coeff(const std::vector<cplx>& in);
std::vector<cplx> apply_bracket_coeff(const std::vector<cplx>& in);   // 4p^2-(2n+1)
std::vector<cplx> apply_invN_coeff(const std::vector<cplx>& in);      // 1/(2n+1)

// [p s1 - q s2] as ladder blocks: up_out = i sqrt2 a^+ lo, lo_out = -i sqrt2 a up
CoeffSpinor apply_S_ladder(const CoeffSpinor& in);

// same operator on an eigenstate through the scalar identity
// [p s1 - q s2] psi = (1/z) { z E - (p^2+q^2)/2 } psi
CoeffSpinor apply_S_eigen(const landau::SpinorState& st,
                          const units::ModelParams& mp, int nosc);

// h applied to an eigenstate; uses apply_S_eigen when the spinor factor acts
// first (all orderings except SuffixQ).
CoeffSpinor apply_h(const landau::SpinorState& st, const PerturbationSpec& spec,
                    const units::ModelParams& mp, int nosc);

// ---- matrix elements ----

// <psi_{n',s'} | DH | psi_{n,s}> [eps_B] by Gauss-Hermite quadrature of the
// synthesized wavefunctions (the e^{-q^2} factors are folded into modified
// weights). s = 0 selects the zero mode. The value is recomputed at twice the
// quadrature order; disagreement beyond 1e-9 of the element scale raises
// std::runtime_error.
double landau_matrix_element(int n, int s, int np, int sp,
                             const PerturbationSpec& spec,
                             const units::ModelParams& mp);

// same element from exact coefficient-space inner products (no quadrature)
double landau_matrix_element_coeff(int n, int s, int np, int sp,
                                   const PerturbationSpec& spec,
                                   const units::ModelParams& mp);

// |pref| * ||h psi_{n,s}||_2, the natural magnitude the nullity is measured
// against
double element_scale(int n, int s, const PerturbationSpec& spec,
                     const units::ModelParams& mp);

// pointwise integrand of the diagonal element at q (odd in q)
double diagonal_integrand(int n, int s, const PerturbationSpec& spec,
                          const units::ModelParams& mp, double q);

// dense h and DH = h + h^dagger on the truncated oscillator (x) spinor basis
// [eps_B units]
osc::OperatorMatrix fraktur_h_matrix(const PerturbationSpec& spec, int nosc);
osc::OperatorMatrix delta_h_matrix(const PerturbationSpec& spec, int nosc);

// ---- crossed electric and magnetic fields ----

struct CrossedFieldSpec {
    double E_over_vFB = 0.0;      // eta = E/(vF B), dimensionless
    double k = 0.0;               // transverse momentum [1/lB]
    double shifted_center = 0.0;  // oscillator center displacement -z eta [lB]
    double lambda_cr_offset = 0.0;  // Lambda = lambda + offset, offset = z^2 eta^2 - 2 z eta k
    bool warn_perturbative = false;  // |eta| > 0.1
};

CrossedFieldSpec make_crossed_spec(double E_over_vFB, double k,
                                   const units::ModelParams& mp);

struct CrossedLevel {
    int n = 0;
    int s = 0;  // 0 marks the zero mode
    bool is_zero_mode = false;
    double energy_int = 0.0;  // zero-field level + shift [eps_B]
    double shift_int = 0.0;   // eta k - eta^2 z / 2
    double lambda_cr = 0.0;   // 2 z energy_int + offset = 2 z x zero-field level
    bool warn_perturbative = false;
};

// rigid shift eta (k - eta z / 2) [eps_B], the same for every level
double crossed_shift_int(const CrossedFieldSpec& cf, const units::ModelParams& mp);

// zero-order crossed-field energy; s = 0 selects the zero mode
CrossedLevel crossed_field_spectrum(int n, int s, const CrossedFieldSpec& cf,
                                    const units::ModelParams& mp);

// first-order correction (w^2 eta / z) <psi_{n,s}| s2 |psi_{n,s}> by
// quadrature; vanishes because the two spinor components sit on neighbouring
// Hermite indices
double crossed_field_first_order(int n, int s, const CrossedFieldSpec& cf,
                                 const units::ModelParams& mp,
                                 int quadrature_order = 64);

// generic <psi_{n',s'}| s2 |psi_{n,s}> by quadrature; the (n+1, s') <- (n, s)
// elements are the nonvanishing witnesses that the operator is not null
cplx sigma2_element(int np, int sp, int n, int s, const units::ModelParams& mp,
                    int quadrature_order = 64);

} // namespace nalandau::perturb
