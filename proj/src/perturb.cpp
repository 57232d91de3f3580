#include "nalandau/perturb.hpp"

#include <cmath>
#include <stdexcept>

namespace nalandau::perturb {

namespace {

constexpr cplx iu{0.0, 1.0};

landau::SpinorState pick_state(int n, int s, const units::ModelParams& mp) {
    if (s == 0) return landau::zero_mode_state(0.0, mp);
    return landau::eigenstate(n, s, 0.0, mp);
}

// phi_m(q) for m < count in one recurrence pass
std::vector<double> phi_row(int count, double q) {
    std::vector<double> row(count, 0.0);
    if (count <= 0) return row;
    row[0] = 0.75112554446494248286 * std::exp(-0.5 * q * q);
    if (count > 1) row[1] = std::sqrt(2.0) * q * row[0];
    for (int m = 1; m + 1 < count; m++)
        row[m + 1] = std::sqrt(2.0 / (m + 1.0)) * q * row[m] -
                     std::sqrt(m / (m + 1.0)) * row[m - 1];
    return row;
}

cplx synth(const std::vector<cplx>& c, const std::vector<double>& row) {
    cplx acc = 0.0;
    const size_t m = std::min(c.size(), row.size());
    for (size_t j = 0; j < m; j++) acc += c[j] * row[j];
    return acc;
}

// sum_i W_i [conj(u_A) u_B + conj(l_A) l_B](q_i)
cplx quad_inner(const CoeffSpinor& A, const CoeffSpinor& B,
                const osc::QuadratureRule& rule, const std::vector<double>& W) {
    const int count = static_cast<int>(
        std::max(std::max(A.up.size(), A.lo.size()),
                 std::max(B.up.size(), B.lo.size())));
    cplx acc = 0.0;
    for (size_t i = 0; i < rule.nodes.size(); i++) {
        const auto row = phi_row(count, rule.nodes[i]);
        const cplx ua = synth(A.up, row), la = synth(A.lo, row);
        const cplx ub = synth(B.up, row), lb = synth(B.lo, row);
        acc += W[i] * (std::conj(ua) * ub + std::conj(la) * lb);
    }
    return acc;
}

cplx coeff_inner(const CoeffSpinor& A, const CoeffSpinor& B) {
    cplx acc = 0.0;
    const size_t mu = std::min(A.up.size(), B.up.size());
    for (size_t j = 0; j < mu; j++) acc += std::conj(A.up[j]) * B.up[j];
    const size_t ml = std::min(A.lo.size(), B.lo.size());
    for (size_t j = 0; j < ml; j++) acc += std::conj(A.lo[j]) * B.lo[j];
    return acc;
}

double coeff_norm(const CoeffSpinor& A) {
    double acc = 0.0;
    for (const cplx& c : A.up) acc += std::norm(c);
    for (const cplx& c : A.lo) acc += std::norm(c);
    return std::sqrt(acc);
}

void map_both(CoeffSpinor& v, std::vector<cplx> (*f)(const std::vector<cplx>&)) {
    v.up = f(v.up);
    v.lo = f(v.lo);
}

} // namespace

PerturbationSpec make_perturbation_spec(double a_m, const units::ModelParams& mp) {
    if (!(a_m > 0.0) || !(mp.lB_m > 0.0))
        throw std::domain_error("perturb: lattice constant and lB must be positive");
    PerturbationSpec spec;
    spec.strength_prefactor = -(a_m / mp.lB_m) / 8.0;
    return spec;
}

double free_quadratic_shift(double k1, double k2, int s,
                            const units::LatticeParams& lp) {
    if (s != 1 && s != -1) throw std::invalid_argument("perturb: s must be +-1");
    const double ksq = k1 * k1 + k2 * k2;
    const double theta = std::atan2(k2, k1);
    return -s * (3.0 / 8.0) * lp.t_eV * lp.a_m * lp.a_m * ksq *
           std::sin(3.0 * theta);
}

double free_perturbation_check(double k1, double k2, int s,
                               const units::LatticeParams& lp) {
    if (s != 1 && s != -1) throw std::invalid_argument("perturb: s must be +-1");
    const double ksq = k1 * k1 + k2 * k2;
    if (ksq == 0.0)
        throw std::domain_error("perturb: inverse momentum undefined at k = 0");
    const double theta = std::atan2(k2, k1);
    const double vF_eVm = 1.5 * lp.a_m * lp.t_eV;
    const cplx sp0 = 1.0 / std::sqrt(2.0);
    const cplx sp1 = static_cast<double>(s) * std::exp(iu * theta) / std::sqrt(2.0);
    const double fac = -(lp.a_m / 4.0) * vF_eVm * k2 * (4.0 * k1 * k1 - ksq) / ksq;
    const cplx out0 = fac * (cplx{k1, -k2} * sp1);
    const cplx out1 = fac * (cplx{k1, k2} * sp0);
    const double shift = free_quadratic_shift(k1, k2, s, lp);
    return std::max(std::abs(out0 - shift * sp0), std::abs(out1 - shift * sp1));
}

CoeffSpinor state_coefficients(const landau::SpinorState& st, int nosc) {
    CoeffSpinor v;
    v.up.assign(nosc, 0.0);
    v.lo.assign(nosc, 0.0);
    if (st.upper_index >= 0 && st.upper_index < nosc)
        v.up[st.upper_index] = st.c_upper;
    if (st.lower_index >= 0 && st.lower_index < nosc)
        v.lo[st.lower_index] = st.c_lower;
    return v;
}

std::vector<cplx> apply_q_coeff(const std::vector<cplx>& in) {
    const int n = static_cast<int>(in.size());
    std::vector<cplx> out(n, 0.0);
    for (int j = 0; j < n; j++) {
        if (j + 1 < n) out[j] += std::sqrt((j + 1.0) / 2.0) * in[j + 1];
        if (j >= 1) out[j] += std::sqrt(j / 2.0) * in[j - 1];
    }
    return out;
}

std::vector<cplx> apply_p2_coeff(const std::vector<cplx>& in) {
    const int n = static_cast<int>(in.size());
    std::vector<cplx> out(n, 0.0);
    for (int j = 0; j < n; j++) {
        out[j] += (2.0 * j + 1.0) / 2.0 * in[j];
        if (j + 2 < n) out[j] -= 0.5 * std::sqrt((j + 1.0) * (j + 2.0)) * in[j + 2];
        if (j >= 2) out[j] -= 0.5 * std::sqrt(j * (j - 1.0)) * in[j - 2];
    }
    return out;
}

std::vector<cplx> apply_bracket_coeff(const std::vector<cplx>& in) {
    std::vector<cplx> out = apply_p2_coeff(in);
    for (size_t j = 0; j < out.size(); j++)
        out[j] = 4.0 * out[j] - (2.0 * j + 1.0) * in[j];
    return out;
}

std::vector<cplx> apply_invN_coeff(const std::vector<cplx>& in) {
    std::vector<cplx> out(in.size());
    for (size_t j = 0; j < in.size(); j++) out[j] = in[j] / (2.0 * j + 1.0);
    return out;
}

CoeffSpinor apply_S_ladder(const CoeffSpinor& in) {
    const int n = static_cast<int>(in.up.size());
    CoeffSpinor out;
    out.up.assign(n, 0.0);
    out.lo.assign(n, 0.0);
    const double s2 = std::sqrt(2.0);
    for (int m = 1; m < n; m++)
        out.up[m] = iu * s2 * std::sqrt(static_cast<double>(m)) * in.lo[m - 1];
    for (int m = 0; m + 1 < n; m++)
        out.lo[m] = -iu * s2 * std::sqrt(m + 1.0) * in.up[m + 1];
    return out;
}

CoeffSpinor apply_S_eigen(const landau::SpinorState& st,
                          const units::ModelParams& mp, int nosc) {
    if (mp.z == 0.0) throw std::domain_error("perturb: needs a massive model (z != 0)");
    CoeffSpinor out;
    out.up.assign(nosc, 0.0);
    out.lo.assign(nosc, 0.0);
    // z E = n+1 + (s/2) sqrt(1 + 8 z^2 (n+1)), exactly 1/2 for the zero mode;
    // the label form keeps S psi_0 an exact floating point zero
    const double zE =
        st.is_zero_mode
            ? 0.5
            : (st.n + 1) +
                  0.5 * st.s * std::sqrt(1.0 + 8.0 * mp.z * mp.z * (st.n + 1));
    if (st.upper_index >= 0 && st.upper_index < nosc)
        out.up[st.upper_index] =
            st.c_upper * ((zE - (st.upper_index + 0.5)) / mp.z);
    if (st.lower_index >= 0 && st.lower_index < nosc)
        out.lo[st.lower_index] =
            st.c_lower * ((zE - (st.lower_index + 0.5)) / mp.z);
    return out;
}

CoeffSpinor apply_h(const landau::SpinorState& st, const PerturbationSpec& spec,
                    const units::ModelParams& mp, int nosc) {
    CoeffSpinor v;
    switch (spec.factor_order) {
        case FactorOrder::PrefixQ:
            v = apply_S_eigen(st, mp, nosc);
            map_both(v, apply_invN_coeff);
            map_both(v, apply_bracket_coeff);
            map_both(v, apply_q_coeff);
            break;
        case FactorOrder::AfterBracket:
            v = apply_S_eigen(st, mp, nosc);
            map_both(v, apply_invN_coeff);
            map_both(v, apply_q_coeff);
            map_both(v, apply_bracket_coeff);
            break;
        case FactorOrder::AfterInverse:
            v = apply_S_eigen(st, mp, nosc);
            map_both(v, apply_q_coeff);
            map_both(v, apply_invN_coeff);
            map_both(v, apply_bracket_coeff);
            break;
        case FactorOrder::SuffixQ:
            v = state_coefficients(st, nosc);
            map_both(v, apply_q_coeff);
            v = apply_S_ladder(v);
            map_both(v, apply_invN_coeff);
            map_both(v, apply_bracket_coeff);
            break;
    }
    for (cplx& c : v.up) c *= spec.strength_prefactor;
    for (cplx& c : v.lo) c *= spec.strength_prefactor;
    return v;
}

namespace {

struct ElementParts {
    CoeffSpinor bra, ket, hbra, hket;
    int base_order = 0;
    double scale = 0.0;
};

ElementParts element_parts(int n, int s, int np, int sp,
                           const PerturbationSpec& spec,
                           const units::ModelParams& mp) {
    if (n < 0 || np < 0) throw std::invalid_argument("perturb: n must be >= 0");
    const landau::SpinorState ket = pick_state(n, s, mp);
    const landau::SpinorState bra = pick_state(np, sp, mp);
    const int top = std::max(std::max(n, np), 1);
    const int nosc = top + 16;
    ElementParts parts;
    parts.ket = state_coefficients(ket, nosc);
    parts.bra = state_coefficients(bra, nosc);
    parts.hket = apply_h(ket, spec, mp, nosc);
    parts.hbra = apply_h(bra, spec, mp, nosc);
    parts.base_order = std::max(spec.quadrature_order, 2 * (std::max(n, np) + 3));
    parts.scale = coeff_norm(parts.hket) + coeff_norm(parts.hbra);
    return parts;
}

} // namespace

double landau_matrix_element(int n, int s, int np, int sp,
                             const PerturbationSpec& spec,
                             const units::ModelParams& mp) {
    const ElementParts parts = element_parts(n, s, np, sp, spec, mp);
    auto eval = [&](int order) {
        const osc::QuadratureRule rule = osc::gauss_hermite(order);
        const std::vector<double> W = osc::modified_weights(rule);
        return quad_inner(parts.bra, parts.hket, rule, W) +
               quad_inner(parts.hbra, parts.ket, rule, W);
    };
    const cplx v1 = eval(parts.base_order);
    const cplx v2 = eval(2 * parts.base_order);
    if (std::abs(v1 - v2) > 1e-9 * std::max(parts.scale, 1e-300))
        throw std::runtime_error(
            "perturb: quadrature under-resolved, raise quadrature_order");
    return v2.real();
}

double landau_matrix_element_coeff(int n, int s, int np, int sp,
                                   const PerturbationSpec& spec,
                                   const units::ModelParams& mp) {
    const ElementParts parts = element_parts(n, s, np, sp, spec, mp);
    const cplx v = coeff_inner(parts.bra, parts.hket) +
                   coeff_inner(parts.hbra, parts.ket);
    return v.real();
}

double element_scale(int n, int s, const PerturbationSpec& spec,
                     const units::ModelParams& mp) {
    const landau::SpinorState st = pick_state(n, s, mp);
    const int nosc = std::max(n, 1) + 16;
    return coeff_norm(apply_h(st, spec, mp, nosc));
}

double diagonal_integrand(int n, int s, const PerturbationSpec& spec,
                          const units::ModelParams& mp, double q) {
    const landau::SpinorState st = pick_state(n, s, mp);
    const int nosc = std::max(n, 1) + 16;
    const CoeffSpinor hs = apply_h(st, spec, mp, nosc);
    const auto row = phi_row(nosc, q);
    const cplx u = landau::state_upper(st, q);
    const cplx l = landau::state_lower(st, q);
    const cplx hu = synth(hs.up, row);
    const cplx hl = synth(hs.lo, row);
    return 2.0 * (std::conj(u) * hu + std::conj(l) * hl).real();
}

osc::OperatorMatrix fraktur_h_matrix(const PerturbationSpec& spec, int nosc) {
    using osc::OperatorMatrix;
    const OperatorMatrix num = osc::osc_number_form(nosc);
    const OperatorMatrix raise = osc::osc_raise(nosc);
    const OperatorMatrix lower = osc::osc_lower(nosc);
    const OperatorMatrix p2 =
        osc::sub(osc::scale(0.5, num),
                 osc::scale(0.5, osc::add(osc::mul(raise, raise),
                                          osc::mul(lower, lower))));
    const OperatorMatrix bracket = osc::sub(osc::scale(4.0, p2), num);
    const OperatorMatrix inv = osc::osc_number_form_inverse(nosc);
    const OperatorMatrix S = osc::sub(osc::tensor_spinor(osc::osc_p(nosc), 1),
                                      osc::tensor_spinor(osc::osc_q(nosc), 2));
    const OperatorMatrix Q = osc::tensor_spinor(osc::osc_q(nosc), 0);
    const OperatorMatrix Brk = osc::tensor_spinor(bracket, 0);
    const OperatorMatrix Inv = osc::tensor_spinor(inv, 0);
    OperatorMatrix chain;
    switch (spec.factor_order) {
        case FactorOrder::PrefixQ:
            chain = osc::mul(Q, osc::mul(Brk, osc::mul(Inv, S)));
            break;
        case FactorOrder::AfterBracket:
            chain = osc::mul(Brk, osc::mul(Q, osc::mul(Inv, S)));
            break;
        case FactorOrder::AfterInverse:
            chain = osc::mul(Brk, osc::mul(Inv, osc::mul(Q, S)));
            break;
        case FactorOrder::SuffixQ:
            chain = osc::mul(Brk, osc::mul(Inv, osc::mul(S, Q)));
            break;
    }
    return osc::scale(spec.strength_prefactor, chain);
}

osc::OperatorMatrix delta_h_matrix(const PerturbationSpec& spec, int nosc) {
    const osc::OperatorMatrix h = fraktur_h_matrix(spec, nosc);
    return osc::add(h, osc::adjoint(h));
}

CrossedFieldSpec make_crossed_spec(double E_over_vFB, double k,
                                   const units::ModelParams& mp) {
    if (mp.z == 0.0) throw std::domain_error("perturb: needs a massive model (z != 0)");
    CrossedFieldSpec cf;
    cf.E_over_vFB = E_over_vFB;
    cf.k = k;
    cf.shifted_center = -mp.z * E_over_vFB;
    cf.lambda_cr_offset =
        mp.z * mp.z * E_over_vFB * E_over_vFB - 2.0 * mp.z * E_over_vFB * k;
    cf.warn_perturbative = std::fabs(E_over_vFB) > 0.1;
    return cf;
}

double crossed_shift_int(const CrossedFieldSpec& cf, const units::ModelParams& mp) {
    return cf.E_over_vFB * (cf.k - cf.E_over_vFB * mp.z / 2.0);
}

CrossedLevel crossed_field_spectrum(int n, int s, const CrossedFieldSpec& cf,
                                    const units::ModelParams& mp) {
    CrossedLevel out;
    out.n = n;
    out.s = s;
    out.is_zero_mode = (s == 0);
    const double base = out.is_zero_mode ? landau::zero_mode_energy(mp)
                                         : landau::level_energy(n, s, mp);
    out.shift_int = crossed_shift_int(cf, mp);
    out.energy_int = base + out.shift_int;
    out.lambda_cr = 2.0 * mp.z * out.energy_int + cf.lambda_cr_offset;
    out.warn_perturbative = cf.warn_perturbative;
    return out;
}

cplx sigma2_element(int np, int sp, int n, int s, const units::ModelParams& mp,
                    int quadrature_order) {
    const landau::SpinorState bra = pick_state(np, sp, mp);
    const landau::SpinorState ket = pick_state(n, s, mp);
    const int order = std::max(quadrature_order, 2 * (std::max(n, np) + 3));
    const osc::QuadratureRule rule = osc::gauss_hermite(order);
    const std::vector<double> W = osc::modified_weights(rule);
    cplx acc = 0.0;
    for (size_t i = 0; i < rule.nodes.size(); i++) {
        const double q = rule.nodes[i];
        const cplx ub = landau::state_upper(bra, q);
        const cplx lb = landau::state_lower(bra, q);
        const cplx uk = landau::state_upper(ket, q);
        const cplx lk = landau::state_lower(ket, q);
        acc += W[i] * (std::conj(ub) * (-iu * lk) + std::conj(lb) * (iu * uk));
    }
    return acc;
}

double crossed_field_first_order(int n, int s, const CrossedFieldSpec& cf,
                                 const units::ModelParams& mp,
                                 int quadrature_order) {
    const double pref = mp.w * mp.w * cf.E_over_vFB / mp.z;
    return pref * sigma2_element(n, s, n, s, mp, quadrature_order).real();
}

} // namespace nalandau::perturb
