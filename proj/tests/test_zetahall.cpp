#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "nalandau/landau.hpp"
#include "nalandau/units.hpp"
#include "nalandau/zetahall.hpp"

using namespace nalandau;
using namespace nalandau::zetahall;
using doctest::Approx;

namespace {

constexpr double pi = 3.14159265358979323846;

bool close_c(cplx got, cplx want, double tol) {
    return std::abs(got - want) < tol * (1.0 + std::abs(want));
}

// log(2 cosh y) as the truncated Matsubara product with a trigamma tail:
//   log 2 + sum_{l<L} log(1 + y^2/((l+1/2)^2 pi^2))
//   + (y/pi)^2 psi'(L+1/2) - (y^4/(2 pi^4)) / (3 (L+1/2)^3)
double matsubara_product(double y, int L = 200000) {
    double s = std::log(2.0);
    const double yy = y * y;
    for (int l = 0; l < L; l++) {
        const double hl = (l + 0.5) * pi;
        s += std::log1p(yy / (hl * hl));
    }
    const double x = L + 0.5;
    const double trigamma = 1.0 / x + 1.0 / (2.0 * x * x) + 1.0 / (6.0 * x * x * x) -
                            1.0 / (30.0 * std::pow(x, 5));
    s += (yy / (pi * pi)) * trigamma;
    s -= (yy * yy / (2.0 * std::pow(pi, 4))) / (3.0 * x * x * x);
    return s;
}

units::ModelParams quoted_model() {
    return units::derive_model_from_scales(4.87e-2, -1.0e3, {10.0, 0.0});
}

} // namespace

TEST_CASE("hurwitz zeta reference values") {
    // references computed in 30-digit arithmetic
    CHECK(close_c(hurwitz_zeta({1.5, 0.0}, {2.7, 0.0}),
                  {1.3401024235062451569, 0.0}, 1e-11));
    CHECK(close_c(hurwitz_zeta({0.3, -1.2}, {1.9, 0.4}),
                  {-0.62703483383336062272, 0.28034657077169209159}, 1e-11));
    CHECK(close_c(hurwitz_zeta({3.25, 0.0}, {0.35, -0.6}),
                  {-3.0362366816745996742, -0.46702719218218874092}, 1e-11));
    CHECK(close_c(hurwitz_zeta({-1.0, 0.0}, {0.3, 0.0}),
                  {0.021666666666666666667, 0.0}, 1e-10));
    CHECK(close_c(hurwitz_zeta({-2.0, 0.0}, {1.7, 0.0}), {-0.476, 0.0}, 1e-10));
    CHECK(close_c(hurwitz_zeta({2.0, 0.0}, {1.0, 0.0}),
                  {1.6449340668482264365, 0.0}, 1e-12));  // pi^2/6
    CHECK(close_c(hurwitz_zeta({2.0, 0.0}, {3.0, 0.0}),
                  {0.39493406684822643647, 0.0}, 1e-12));  // pi^2/6 - 1 - 1/4
}

TEST_CASE("hurwitz zeta special arguments and guards") {
    // zeta(0, a) = 1/2 - a
    for (cplx a : {cplx{0.07, 0.0}, cplx{1.3, 0.0}, cplx{41.0, 0.0},
                   cplx{0.5, -9.0}, cplx{2.4, 17.0}})
        CHECK(std::abs(hurwitz_zeta({0.0, 0.0}, a) - (0.5 - a)) < 1e-13 * (1.0 + std::abs(a)));
    // zeta(-1, a) = -B2(a)/2, zeta(-2, a) = -B3(a)/3
    for (double a : {0.2, 0.9, 1.7, 6.3}) {
        const double b2 = a * a - a + 1.0 / 6.0;
        const double b3 = a * a * a - 1.5 * a * a + 0.5 * a;
        CHECK(std::abs(hurwitz_zeta({-1.0, 0.0}, {a, 0.0}) - (-b2 / 2.0)) < 1e-9);
        CHECK(std::abs(hurwitz_zeta({-2.0, 0.0}, {a, 0.0}) - (-b3 / 3.0)) < 1e-9);
    }
    CHECK_THROWS_AS(hurwitz_zeta({1.0, 0.0}, {2.0, 0.0}), std::domain_error);
    CHECK_THROWS_AS(hurwitz_zeta({2.0, 0.0}, {0.0, 0.0}), std::domain_error);
    CHECK_THROWS_AS(hurwitz_zeta({2.0, 0.0}, {-0.3, 1.0}), std::domain_error);
}

TEST_CASE("zeta derivative at zero equals the loggamma form") {
    CHECK(close_c(hurwitz_zeta_du0({0.6, 1.1}),
                  {-1.7227322017507601105, -0.8029953312260486145}, 1e-11));
    CHECK(close_c(hurwitz_zeta_du0({3.2, -0.7}),
                  {-0.12235126870610584604, -0.70664042252243844042}, 1e-11));
    const double half_l2pi = 0.5 * std::log(2.0 * pi);
    for (cplx a : {cplx{0.25, 0.0}, cplx{1.0, 0.0}, cplx{5.5, 0.0}, cplx{0.5, 3.0},
                   cplx{2.2, -40.0}})
        CHECK(std::abs(hurwitz_zeta_du0(a) - (log_gamma(a) - half_l2pi)) <
              1e-11 * (1.0 + std::abs(log_gamma(a))));
    CHECK_THROWS_AS(hurwitz_zeta_du0({-1.0, 0.0}), std::domain_error);
}

TEST_CASE("log gamma") {
    CHECK(close_c(log_gamma({7.5, 0.0}), {7.5343642367587329552, 0.0}, 1e-13));
    CHECK(close_c(log_gamma({0.8, -0.33}),
                  {0.033713068726573372375, 0.29409719832926429571}, 1e-13));
    CHECK(close_c(log_gamma({0.05, 2.0}),
                  {-2.5336481985319510236, -1.3507094948328372482}, 1e-13));
    CHECK(std::abs(log_gamma({0.5, 0.0}) - 0.5 * std::log(pi)) < 1e-14);
    // recursion log Gamma(a+1) = log Gamma(a) + log a (both sides in the
    // direct Lanczos domain, so nothing cancels by construction)
    for (cplx a : {cplx{3.7, 0.0}, cplx{1.3, 0.4}, cplx{0.6, 2.0}})
        CHECK(std::abs(log_gamma(a + 1.0) - log_gamma(a) - std::log(a)) <
              1e-13 * (1.0 + std::abs(log_gamma(a))));
    CHECK_THROWS_AS(log_gamma({0.0, 0.0}), std::domain_error);
    CHECK_THROWS_AS(log_gamma({-2.5, 0.0}), std::domain_error);
}

TEST_CASE("level logdet against the Matsubara product") {
    struct Probe {
        double E, mu, beta;
    };
    const Probe probes[] = {
        {0.5, 0.5, 2.0}, {0.0, 0.3, 2.0}, {1.4, -0.7, 10.0},
        {-2.0, 0.4, 25.0}, {0.0, 2.0, 100.0},
    };
    for (const Probe& p : probes) {
        const double y = 0.5 * p.beta * (p.mu - p.E);
        const double ld = level_logdet(p.E, {p.mu, p.beta});
        CHECK(std::abs(ld - matsubara_product(y)) < 1e-10 * (1.0 + std::fabs(y)));
        CHECK(std::abs(ld - log_2cosh(y)) < 1e-12 * (1.0 + std::fabs(y)));
        CHECK(std::abs(log_2cosh(y) - matsubara_product(y)) < 1e-10 * (1.0 + std::fabs(y)));
    }
}

TEST_CASE("logdet symmetry, scale independence, guards") {
    const Thermo tp{0.4, 25.0};
    // even in mu - E
    CHECK(std::abs(level_logdet(-1.6, tp) - level_logdet(2.4, tp)) < 1e-11);
    // the u = 0 brace cancels analytically, so lambda drops out up to the
    // residual zeta(0, a) rounding that multiplies log(lambda)
    CHECK(std::abs(level_logdet(-1.6, tp, 1.0) - level_logdet(-1.6, tp, 137.036)) <
          1e-12 * (1.0 + std::fabs(level_logdet(-1.6, tp, 1.0))));
    CHECK(std::abs(level_logdet(0.9, tp, 0.01) - level_logdet(0.9, tp, 3.7e4)) <
          1e-12 * (1.0 + std::fabs(level_logdet(0.9, tp, 0.01))));
    // deep in the gap the determinant reduces to |y|
    CHECK(level_logdet(-2.0, {0.4, 25.0}) == Approx(30.0).epsilon(1e-13));
    CHECK_THROWS_AS(level_logdet(0.0, {0.0, 0.0}), std::domain_error);
    CHECK_THROWS_AS(level_logdet(0.0, {0.0, -2.0}), std::domain_error);
    CHECK_THROWS_AS(level_logdet(0.0, tp, 0.0), std::domain_error);
}

TEST_CASE("occupation is the Fermi factor tied to the determinant") {
    const Thermo tp{0.7, 2.0};
    CHECK(occupation(0.7, tp) == 0.5);
    for (double E : {-1.0, 0.2, 0.7, 1.9}) {
        const double x = tp.beta_int * (tp.mu_int - E);
        CHECK(occupation(E, tp) == Approx(1.0 / (1.0 + std::exp(-x))).epsilon(1e-15));
        // particle-hole mirror around mu
        CHECK(occupation(E, tp) + occupation(2.0 * tp.mu_int - E, tp) ==
              Approx(1.0).epsilon(1e-14));
        // occ = 1/2 + (1/beta) d(logdet)/dmu; h large enough that the zeta
        // evaluation noise does not dominate the difference quotient
        const double h = 1e-5;
        const double dd = (level_logdet(E, {tp.mu_int + h, tp.beta_int}) -
                           level_logdet(E, {tp.mu_int - h, tp.beta_int})) /
                          (2.0 * h * tp.beta_int);
        CHECK(occupation(E, tp) == Approx(0.5 + dd).epsilon(1e-7));
    }
    // sharp step at beta |mu - E| = 30
    CHECK(occupation(0.0, {1.0, 60.0}) >= 1.0 - 1e-15);
    CHECK(occupation(0.0, {-1.0, 60.0}) < 1e-25);
    CHECK_THROWS_AS(occupation(0.0, {0.0, 0.0}), std::domain_error);
}

TEST_CASE("merged spectrum table") {
    const units::ModelParams mp = quoted_model();
    const int nmax = required_nmax(3.0);
    REQUIRE(nmax == 12);
    const SpectrumTable table = build_spectrum_table(mp, nmax);
    CHECK(table.levels.size() == 2 * (2 * (nmax + 1) + 1));
    CHECK(table.n_max == nmax);
    CHECK(table.spin_factor == 2);
    CHECK(table.margin == 2.0);
    CHECK(table.epsB_eV == mp.epsB_eV);
    CHECK(table.B_T == 10.0);
    for (size_t i = 1; i < table.levels.size(); i++)
        CHECK(table.levels[i - 1].energy_int <= table.levels[i].energy_int);
    // the two valleys mirror each other exactly
    const size_t N = table.levels.size();
    for (size_t i = 0; i < N; i++)
        CHECK(table.levels[i].energy_int == -table.levels[N - 1 - i].energy_int);
    int zero_modes = 0;
    for (const auto& lv : table.levels)
        if (lv.is_zero_mode) {
            zero_modes++;
            const double want = (lv.valley == landau::Valley::K ? 1.0 : -1.0) * 0.5 / mp.z;
            CHECK(lv.energy_int == want);
        }
    CHECK(zero_modes == 2);
    // coverage ends at the slowest-growing branch of the truncation
    CHECK(table.cover_pos == landau::level_energy(nmax, -1, mp));
    CHECK(table.cover_neg == -table.cover_pos);

    CHECK(build_spectrum_table(mp, 0).levels.size() == 6);
    CHECK(required_nmax(0.0) == 2);
    CHECK_THROWS_AS(required_nmax(-0.5), std::invalid_argument);
}

TEST_CASE("hall staircase counting") {
    const units::ModelParams mp = quoted_model();
    const SpectrumTable table = build_spectrum_table(mp, required_nmax(3.0));
    CHECK(hall_sigma_e2h(table, 0.0) == 0.0);
    CHECK(hall_sigma_e2h(table, 0.01) == 2.0);    // zero mode only
    CHECK(hall_sigma_e2h(table, -0.01) == -2.0);
    CHECK(hall_sigma_e2h(table, 1.0) == 2.0);
    CHECK(hall_sigma_e2h(table, 1.5) == 6.0);     // + the split n = 0 pair
    CHECK(hall_sigma_e2h(table, 2.3) == 10.0);
    CHECK(hall_sigma_e2h(table, 2.5) == 14.0);
    for (double mu : {0.3, 1.5, 2.3})
        CHECK(hall_sigma_e2h(table, -mu) == -hall_sigma_e2h(table, mu));
    // strict inequality: a level sitting exactly at mu is not counted
    double zm_pos = 0.0;
    for (const auto& lv : table.levels)
        if (lv.is_zero_mode && lv.energy_int > 0.0) zm_pos = lv.energy_int;
    CHECK(hall_sigma_e2h(table, zm_pos) == 0.0);
    CHECK_THROWS_AS(hall_sigma_e2h(table, 3.2), std::domain_error);
    CHECK_THROWS_AS(hall_sigma_e2h(table, -3.2), std::domain_error);
}

TEST_CASE("finite temperature limits to the counting form") {
    const units::ModelParams mp = quoted_model();
    const SpectrumTable table = build_spectrum_table(mp, required_nmax(3.0));
    for (double mu : {0.7, 1.7, -2.2})
        CHECK(hall_sigma_e2h_finiteT(table, mu, 1e5) ==
              Approx(hall_sigma_e2h(table, mu)).epsilon(1e-8));
    CHECK(hall_sigma_e2h_finiteT(table, 0.0, 1.0) == 0.0);
    CHECK_THROWS_AS(hall_sigma_e2h_finiteT(table, 3.2, 1e5), std::domain_error);
}

TEST_CASE("hall curve assembly") {
    const units::ModelParams mp = quoted_model();
    const SpectrumTable table = build_spectrum_table(mp, required_nmax(3.0));
    const std::vector<double> grid{-1.5, -0.01, 0.0, 0.01, 1.5};
    const ConductivityCurve curve = hall_curve(table, grid);
    REQUIRE(curve.mu_int.size() == grid.size());
    REQUIRE(curve.sigma_e2h.size() == grid.size());
    REQUIRE(curve.reduced.size() == grid.size());
    const double sig[] = {-6.0, -2.0, 0.0, 2.0, 6.0};
    for (size_t i = 0; i < grid.size(); i++) {
        CHECK(curve.mu_int[i] == grid[i]);
        CHECK(curve.mu_eV[i] == grid[i] * table.epsB_eV);
        CHECK(curve.sigma_e2h[i] == sig[i]);
        CHECK(curve.reduced[i] == 0.25 * sig[i]);
    }
    // window (cover_neg + margin, cover_pos - margin) holds the 2 zero modes
    // and the fully split n = 0..3 quartets
    REQUIRE(curve.plateau_edges_int.size() == 18);
    const double lo = table.cover_neg + table.margin;
    const double hi = table.cover_pos - table.margin;
    for (size_t i = 0; i < curve.plateau_edges_int.size(); i++) {
        CHECK(curve.plateau_edges_int[i] > lo);
        CHECK(curve.plateau_edges_int[i] < hi);
        if (i) CHECK(curve.plateau_edges_int[i - 1] <= curve.plateau_edges_int[i]);
    }
}
