#include "nalandau/zetahall.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nalandau::zetahall {

namespace {

constexpr double pi = 3.14159265358979323846;

// (2k)!/B_{2k}, k = 1..12
constexpr double recip_b2k[12] = {
    12.0,
    -720.0,
    30240.0,
    -1209600.0,
    47900160.0,
    -1.8924375803183791606e9,
    7.47242496e10,
    -2.950130727918164224e12,
    1.1646782814350067249e14,
    -4.5979787224074726105e15,
    1.8152105401943546773e17,
    -7.1661652561756670113e18,
};

// (2k-2)!, k = 1..12
constexpr double fact_2km2[12] = {
    1.0,
    2.0,
    24.0,
    720.0,
    40320.0,
    3628800.0,
    479001600.0,
    87178291200.0,
    20922789888000.0,
    6402373705728000.0,
    2432902008176640000.0,
    1.1240007277776076800e21,
};

int em_shift(cplx a) {
    // push the argument far enough right that the Bernoulli tail converges fast
    const double need = 35.0;
    if (std::abs(a) >= need) return 0;
    const int n = static_cast<int>(std::ceil(need - a.real()));
    return n > 0 ? n : 0;
}

} // namespace

cplx hurwitz_zeta(cplx u, cplx a) {
    if (!(a.real() > 0.0))
        throw std::domain_error("zetahall: hurwitz_zeta needs Re(a) > 0");
    if (u == cplx{1.0, 0.0})
        throw std::domain_error("zetahall: hurwitz_zeta pole at u = 1");
    const int N = em_shift(a);
    cplx sum = 0.0;
    for (int j = 0; j < N; j++) sum += std::pow(a + static_cast<double>(j), -u);
    const cplx b = a + static_cast<double>(N);
    sum += std::pow(b, 1.0 - u) / (u - 1.0);
    sum += 0.5 * std::pow(b, -u);
    // Bernoulli tail: sum_k B_2k/(2k)! (u)_{2k-1} b^{-u-2k+1}
    cplx poch = u;                      // (u)_1
    cplx bpow = std::pow(b, -u - 1.0);  // b^{-u-2k+1} at k = 1
    const cplx binv2 = 1.0 / (b * b);
    for (int k = 1; k <= 12; k++) {
        sum += poch * bpow / recip_b2k[k - 1];
        poch *= (u + (2.0 * k - 1.0)) * (u + 2.0 * k);
        bpow *= binv2;
    }
    return sum;
}

cplx hurwitz_zeta_du0(cplx a) {
    if (!(a.real() > 0.0))
        throw std::domain_error("zetahall: hurwitz_zeta_du0 needs Re(a) > 0");
    const int N = em_shift(a);
    cplx sum = 0.0;
    for (int j = 0; j < N; j++) sum -= std::log(a + static_cast<double>(j));
    const cplx b = a + static_cast<double>(N);
    const cplx logb = std::log(b);
    sum += b * (logb - 1.0);
    sum -= 0.5 * logb;
    cplx bpow = 1.0 / b;
    const cplx binv2 = 1.0 / (b * b);
    for (int k = 1; k <= 12; k++) {
        // B_2k/((2k)(2k-1)) b^{1-2k}
        sum += fact_2km2[k - 1] / recip_b2k[k - 1] * bpow;
        bpow *= binv2;
    }
    return sum;
}

cplx log_gamma(cplx z) {
    if (!(z.real() > 0.0)) throw std::domain_error("zetahall: log_gamma needs Re(z) > 0");
    static const double c[9] = {
        0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
        771.32342877765313,   -176.61502916214059,   12.507343278686905,
        -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7,
    };
    cplx shift = 0.0;
    while (z.real() < 0.5) {  // recursion into the Lanczos domain
        shift -= std::log(z);
        z += 1.0;
    }
    cplx x = c[0];
    for (int i = 1; i < 9; i++) x += c[i] / (z - 1.0 + static_cast<double>(i));
    const cplx t = z + 6.5;
    return 0.5 * std::log(2.0 * pi) + (z - 0.5) * std::log(t) - t + std::log(x) + shift;
}

double log_2cosh(double y) {
    const double ay = std::fabs(y);
    return ay + std::log1p(std::exp(-2.0 * ay));
}

double level_logdet(double E_int, const Thermo& tp, double lambda_scale) {
    if (!(tp.beta_int > 0.0)) throw std::domain_error("zetahall: beta must be positive");
    if (!(lambda_scale > 0.0)) throw std::domain_error("zetahall: lambda must be positive");
    const double y = 0.5 * tp.beta_int * (tp.mu_int - E_int);
    const double x = y / pi;
    const cplx am{0.5, -x};
    const cplx ap{0.5, x};
    const cplx z0m = hurwitz_zeta(cplx{0.0, 0.0}, am);
    const cplx z0p = hurwitz_zeta(cplx{0.0, 0.0}, ap);
    const cplx braces0 = z0m + z0p;  // vanishes analytically: Lambda drops out
    const cplx half_ipi{0.0, 0.5 * pi};
    const cplx bracesp = -half_ipi * z0m + hurwitz_zeta_du0(am) + half_ipi * z0p +
                         hurwitz_zeta_du0(ap);
    const double log_scale = std::log(2.0 * pi / (tp.beta_int * lambda_scale));
    const cplx sprime0 = -log_scale * braces0 + bracesp;
    return (-sprime0).real() + y;
}

double occupation(double E_int, const Thermo& tp) {
    if (!(tp.beta_int > 0.0)) throw std::domain_error("zetahall: beta must be positive");
    const double x = tp.beta_int * (tp.mu_int - E_int);
    if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
    const double ex = std::exp(x);
    return ex / (1.0 + ex);
}

SpectrumTable build_spectrum_table(const units::ModelParams& mp, int n_max) {
    SpectrumTable table;
    table.n_max = n_max;
    table.epsB_eV = mp.epsB_eV;
    table.B_T = mp.B_T;
    table.spin_factor = mp.spin_degeneracy;
    for (landau::Valley v : {landau::Valley::K, landau::Valley::Kprime}) {
        auto part = landau::valley_spectrum(v, n_max, mp);
        table.levels.insert(table.levels.end(), part.begin(), part.end());
    }
    std::stable_sort(table.levels.begin(), table.levels.end(),
                     [](const landau::LandauLevel& a, const landau::LandauLevel& b) {
                         return a.energy_int < b.energy_int;
                     });
    // the table is complete up to the slowest-growing branch end on each side
    double pos = 0.0, neg = 0.0;
    bool pos_set = false, neg_set = false;
    for (landau::Valley v : {landau::Valley::K, landau::Valley::Kprime}) {
        for (int s : {-1, 1}) {
            const double sign = (v == landau::Valley::K) ? 1.0 : -1.0;
            const double e_end = sign * landau::level_energy(n_max, s, mp);
            if (e_end > 0.0) {
                if (!pos_set || e_end < pos) pos = e_end;
                pos_set = true;
            } else {
                if (!neg_set || e_end > neg) neg = e_end;
                neg_set = true;
            }
        }
    }
    table.cover_pos = pos_set ? pos : 0.0;
    table.cover_neg = neg_set ? neg : 0.0;
    return table;
}

int required_nmax(double mu_max_int) {
    if (mu_max_int < 0.0) throw std::invalid_argument("zetahall: mu_max must be >= 0");
    int n = 0;
    while (std::sqrt(2.0 * (n + 1.0)) <= mu_max_int + 2.0) n++;
    return n;
}

namespace {

void require_covered(const SpectrumTable& table, double mu_int) {
    if (mu_int > table.cover_pos - table.margin ||
        mu_int < table.cover_neg + table.margin)
        throw std::domain_error("zetahall: mu outside the covered spectrum range");
}

} // namespace

double hall_sigma_e2h(const SpectrumTable& table, double mu_int) {
    require_covered(table, mu_int);
    long count = 0;
    if (mu_int > 0.0) {
        for (const auto& lv : table.levels)
            if (lv.energy_int > 0.0 && lv.energy_int < mu_int) count++;
    } else if (mu_int < 0.0) {
        for (const auto& lv : table.levels)
            if (lv.energy_int > mu_int && lv.energy_int < 0.0) count--;
    }
    return static_cast<double>(table.spin_factor) * static_cast<double>(count);
}

double hall_sigma_e2h_finiteT(const SpectrumTable& table, double mu_int,
                              double beta_int) {
    require_covered(table, mu_int);
    const Thermo at_mu{mu_int, beta_int};
    const Thermo at_zero{0.0, beta_int};
    double acc = 0.0;
    for (const auto& lv : table.levels)
        acc += occupation(lv.energy_int, at_mu) - occupation(lv.energy_int, at_zero);
    return table.spin_factor * acc;
}

ConductivityCurve hall_curve(const SpectrumTable& table,
                             const std::vector<double>& mu_grid_int) {
    ConductivityCurve curve;
    curve.mu_int.reserve(mu_grid_int.size());
    for (double mu : mu_grid_int) {
        const double s = hall_sigma_e2h(table, mu);
        curve.mu_int.push_back(mu);
        curve.mu_eV.push_back(mu * table.epsB_eV);
        curve.sigma_e2h.push_back(s);
        curve.reduced.push_back(0.25 * s);
    }
    const double lo = table.cover_neg + table.margin;
    const double hi = table.cover_pos - table.margin;
    for (const auto& lv : table.levels)
        if (lv.energy_int > lo && lv.energy_int < hi)
            curve.plateau_edges_int.push_back(lv.energy_int);
    return curve;
}

} // namespace nalandau::zetahall
