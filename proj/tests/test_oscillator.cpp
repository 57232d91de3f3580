#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include "nalandau/eigensolver.hpp"
#include "nalandau/oscillator.hpp"

using namespace nalandau;
using namespace nalandau::osc;
using doctest::Approx;
using cplx = std::complex<double>;

namespace {

constexpr double pi = 3.14159265358979323846;
constexpr double sqrtpi = 1.7724538509055160273;

struct Rng {
    uint64_t s;
    explicit Rng(uint64_t seed) : s(seed) {}
    double uniform() {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        return (s >> 11) * 0x1.0p-53;
    }
    double sym() { return 2.0 * uniform() - 1.0; }
};

double max_entry_diff(const OperatorMatrix& A, const OperatorMatrix& B) {
    double worst = 0.0;
    for (size_t i = 0; i < A.m.size(); i++)
        worst = std::max(worst, std::abs(A.m[i] - B.m[i]));
    return worst;
}

} // namespace

TEST_CASE("physicists hermite polynomials") {
    for (double q : {-2.3, -0.4, 0.0, 0.7, 1.9}) {
        CHECK(hermite(0, q) == 1.0);
        CHECK(hermite(1, q) == Approx(2.0 * q).epsilon(1e-14));
        CHECK(hermite(2, q) == Approx(4.0 * q * q - 2.0).epsilon(1e-13));
        CHECK(hermite(3, q) == Approx(8.0 * q * q * q - 12.0 * q).epsilon(1e-13).scale(20.0));
    }
}

TEST_CASE("normalized hermite functions") {
    CHECK(hermite_function(0, 0.0) == Approx(std::pow(pi, -0.25)).epsilon(1e-15));
    // values stay modest even at high order (no factorial overflow)
    CHECK(std::fabs(hermite_function(180, 1.3)) < 1.0);
    // orthonormality through the quadrature rule with the Gaussian folded out
    const QuadratureRule rule = gauss_hermite(40);
    const std::vector<double> W = modified_weights(rule);
    for (int n = 0; n <= 12; n += 3)
        for (int m = 0; m <= 12; m += 2) {
            double acc = 0.0;
            for (size_t j = 0; j < rule.nodes.size(); j++)
                acc += W[j] * hermite_function(n, rule.nodes[j]) *
                       hermite_function(m, rule.nodes[j]);
            CHECK(acc == Approx(n == m ? 1.0 : 0.0).epsilon(1e-12).scale(1.0));
        }
}

TEST_CASE("ladder recurrences and derivative") {
    Rng rng(17);
    for (int n : {0, 1, 2, 7, 19, 30}) {
        const double q = 3.0 * rng.sym();
        const RecurrenceResidual r = recurrence_check(n, q);
        const double scale = std::fabs(hermite(n, q)) + 1.0;
        CHECK(std::fabs(r.r1) < 1e-10 * scale * (2.0 * n + 1.0));
        CHECK(std::fabs(r.r2) < 1e-10 * scale * (2.0 * n + 1.0));
        const double h = 1e-5;
        const double fd =
            (hermite_function(n, q + h) - hermite_function(n, q - h)) / (2.0 * h);
        CHECK(hermite_function_derivative(n, q) == Approx(fd).epsilon(1e-7).scale(1.0));
    }
}

TEST_CASE("gauss hermite rule") {
    const QuadratureRule r1 = gauss_hermite(1);
    CHECK(r1.nodes[0] == Approx(0.0).scale(1.0));
    CHECK(r1.weights[0] == Approx(sqrtpi).epsilon(1e-14));
    for (int order : {2, 5, 13, 40}) {
        const QuadratureRule r = gauss_hermite(order);
        REQUIRE(static_cast<int>(r.nodes.size()) == order);
        double sum = 0.0;
        for (double w : r.weights) sum += w;
        CHECK(sum == Approx(sqrtpi).epsilon(1e-13));
        // nodes come out sorted and symmetric
        for (size_t j = 1; j < r.nodes.size(); j++) CHECK(r.nodes[j] > r.nodes[j - 1]);
        for (size_t j = 0; j < r.nodes.size(); j++)
            CHECK(r.nodes[j] == Approx(-r.nodes[r.nodes.size() - 1 - j]).epsilon(1e-12).scale(1.0));
    }
    const QuadratureRule r5 = gauss_hermite(5);
    auto moment = [&](int p) {
        const std::function<double(double)> f = [p](double q) { return std::pow(q, p); };
        return integrate(f, r5);
    };
    CHECK(moment(2) == Approx(sqrtpi / 2.0).epsilon(1e-13));
    CHECK(moment(4) == Approx(3.0 * sqrtpi / 4.0).epsilon(1e-13));
    CHECK(moment(8) == Approx(105.0 * sqrtpi / 16.0).epsilon(1e-12));
    // degree 10 exceeds the exactness bound 2*5-1 of the 5-point rule
    CHECK(std::fabs(moment(10) - 945.0 * sqrtpi / 32.0) > 1e-2);
    const std::function<double(double)> bad = [](double) { return std::nan(""); };
    CHECK_THROWS_AS(integrate(bad, r5), std::runtime_error);
    CHECK_THROWS_AS(gauss_hermite(0), std::invalid_argument);
}

TEST_CASE("modified weights") {
    const QuadratureRule r = gauss_hermite(80);
    const std::vector<double> W = modified_weights(r);
    for (size_t j = 0; j < W.size(); j++) {
        CHECK(std::isfinite(W[j]));
        CHECK(W[j] > 0.0);
    }
}

TEST_CASE("ladder matrices and truncation edge") {
    const int nosc = 12;
    const OperatorMatrix a = osc_lower(nosc), ad = osc_raise(nosc);
    const OperatorMatrix num = mul(ad, a);
    for (int n = 0; n < nosc; n++)
        CHECK(std::abs(num.at(n, n) - cplx(n, 0.0)) < 1e-13);
    // [a, a^+] = 1 everywhere except the last diagonal entry, which records
    // the cut: -nosc+1 instead of +1
    const OperatorMatrix comm = commutator(a, ad);
    CHECK(max_abs_diff_interior(comm, osc_identity(nosc), 1) < 1e-14);
    CHECK(std::abs(comm.at(nosc - 1, nosc - 1) + cplx(nosc - 1.0, 0.0)) < 1e-13);

    const OperatorMatrix q = osc_q(nosc), p = osc_p(nosc);
    CHECK(max_abs_offdiag_hermitian_defect(q) == 0.0);
    CHECK(max_abs_offdiag_hermitian_defect(p) == 0.0);
    const OperatorMatrix qp = commutator(q, p);
    const OperatorMatrix iI = scale(cplx(0.0, 1.0), osc_identity(nosc));
    CHECK(max_abs_diff_interior(qp, iI, 1) < 1e-14);
    CHECK(std::abs(qp.at(nosc - 1, nosc - 1)) > 1.0);

    const OperatorMatrix n_form = osc_number_form(nosc);
    for (int n = 0; n < nosc; n++) CHECK(n_form.at(n, n) == cplx(2 * n + 1, 0.0));
    const OperatorMatrix p2q2 = add(mul(p, p), mul(q, q));
    CHECK(max_abs_diff_interior(p2q2, n_form, truncation_edge_rows) < 1e-13);
    const OperatorMatrix inv = osc_number_form_inverse(nosc);
    CHECK(max_entry_diff(mul(n_form, inv), osc_identity(nosc)) < 1e-15);
}

TEST_CASE("spinor tensor layout") {
    const int nosc = 5;
    const OperatorMatrix q = osc_q(nosc);
    const OperatorMatrix t0 = tensor_spinor(q, 0);
    const OperatorMatrix t1 = tensor_spinor(q, 1);
    const OperatorMatrix t2 = tensor_spinor(q, 2);
    const OperatorMatrix t3 = tensor_spinor(q, 3);
    REQUIRE(t1.dim == 2 * nosc);
    CHECK(t0.at(0, 1) == q.at(0, 1));
    CHECK(t0.at(0, nosc + 1) == cplx(0.0, 0.0));
    CHECK(t1.at(0, nosc + 1) == q.at(0, 1));
    CHECK(t1.at(nosc + 1, 0) == q.at(1, 0));
    CHECK(t1.at(0, 1) == cplx(0.0, 0.0));
    CHECK(t2.at(0, nosc + 1) == -cplx(0.0, 1.0) * q.at(0, 1));
    CHECK(t2.at(nosc + 1, 0) == cplx(0.0, 1.0) * q.at(1, 0));
    CHECK(t3.at(0, 1) == q.at(0, 1));
    CHECK(t3.at(nosc, nosc + 1) == -q.at(0, 1));
    CHECK_THROWS_AS(tensor_spinor(q, 4), std::invalid_argument);
}

TEST_CASE("landau operator entries and small spectrum") {
    const double z = 0.8;
    const int n_max = 6, nosc = n_max + 1;
    const OperatorMatrix H = build_landau_operator(z, n_max, +1);
    REQUIRE(H.dim == 2 * nosc);
    CHECK(max_abs_offdiag_hermitian_defect(H) == 0.0);
    for (int m = 0; m < nosc; m++) {
        CHECK(H.at(m, m) == cplx(2 * m + 1, 0.0));
        CHECK(H.at(nosc + m, nosc + m) == cplx(2 * m + 1, 0.0));
    }
    for (int m = 0; m + 1 < nosc; m++) {
        const cplx coupling = H.at(m + 1, nosc + m);
        CHECK(coupling.real() == Approx(0.0).scale(1.0));
        CHECK(coupling.imag() ==
              Approx(2.0 * std::sqrt(2.0) * z * std::sqrt(m + 1.0)).epsilon(1e-14));
        CHECK(H.at(m, nosc + m) == cplx(0.0, 0.0));
    }
    // the swapped-field operator is the spinor-exchange conjugate
    const OperatorMatrix Hm = build_landau_operator(z, n_max, -1);
    for (int i = 0; i < nosc; i++)
        for (int j = 0; j < nosc; j++) {
            CHECK(Hm.at(i, j) == H.at(nosc + i, nosc + j));
            CHECK(Hm.at(i, nosc + j) == H.at(nosc + i, j));
        }
    CHECK_THROWS_AS(build_landau_operator(z, -1, +1), std::invalid_argument);
    CHECK_THROWS_AS(build_landau_operator(z, 6, 2), std::invalid_argument);

    // n_max = 1 block: eigenvalues {1, 3, 2 +- sqrt(1+8 z^2)}
    const OperatorMatrix H1 = build_landau_operator(z, 1, +1);
    const auto res = eig::hermitian_eigensolve(H1.m, H1.dim, false);
    std::vector<double> expect{1.0, 3.0, 2.0 - std::sqrt(1.0 + 8.0 * z * z),
                               2.0 + std::sqrt(1.0 + 8.0 * z * z)};
    std::sort(expect.begin(), expect.end());
    REQUIRE(res.values.size() == 4);
    for (int i = 0; i < 4; i++)
        CHECK(res.values[i] == Approx(expect[i]).epsilon(1e-12).scale(1.0));
}

TEST_CASE("deformed momenta commutators") {
    const double z = 1.7, k = 0.4;
    const int nosc = 9;
    const auto [P1, P2] = deformed_momenta_free(z, k, nosc);
    const OperatorMatrix lhs = commutator(P1, P2);
    const OperatorMatrix rhs = scale(cplx(0.0, 2.0 * z * z), tensor_spinor(osc_identity(nosc), 3));
    CHECK(max_entry_diff(lhs, rhs) < 1e-14);

    const auto [Q1, Q2] = deformed_momenta_landau(z, nosc);
    const OperatorMatrix lhs2 = commutator(Q1, Q2);
    const OperatorMatrix rhs2 = add(
        scale(cplx(0.0, 1.0), tensor_spinor(osc_identity(nosc), 0)),
        scale(cplx(0.0, 2.0 * z * z), tensor_spinor(osc_identity(nosc), 3)));
    CHECK(max_abs_diff_interior(lhs2, rhs2, truncation_edge_rows) < 1e-14);
}

TEST_CASE("symmetric eigensolver properties") {
    const int n = 30;
    Rng rng(99);
    std::vector<double> A(n * n);
    for (int i = 0; i < n; i++)
        for (int j = 0; j <= i; j++) A[i * n + j] = A[j * n + i] = rng.sym();
    const auto res = eig::symmetric_eigensolve(A, n, true);
    REQUIRE(res.has_vectors);
    double anorm = 0.0, trace = 0.0, sum = 0.0;
    for (double v : res.values) sum += v;
    for (int i = 0; i < n; i++) {
        trace += A[i * n + i];
        for (int j = 0; j < n; j++) anorm = std::max(anorm, std::fabs(A[i * n + j]));
    }
    anorm *= n;
    CHECK(sum == Approx(trace).epsilon(1e-11).scale(anorm));
    for (int j = 1; j < n; j++) CHECK(res.values[j] >= res.values[j - 1]);
    // residuals and orthogonality
    for (int j = 0; j < n; j++) {
        double rmax = 0.0;
        for (int i = 0; i < n; i++) {
            double acc = 0.0;
            for (int k = 0; k < n; k++) acc += A[i * n + k] * res.vectors[k * n + j];
            rmax = std::max(rmax, std::fabs(acc - res.values[j] * res.vectors[i * n + j]));
        }
        CHECK(rmax < 1e-10 * anorm);
    }
    for (int a = 0; a < n; a += 7)
        for (int b = 0; b < n; b++) {
            double acc = 0.0;
            for (int k = 0; k < n; k++) acc += res.vectors[k * n + a] * res.vectors[k * n + b];
            CHECK(acc == Approx(a == b ? 1.0 : 0.0).epsilon(1e-10).scale(1.0));
        }
    CHECK_THROWS_AS(eig::symmetric_eigensolve(std::vector<double>(7), 3, false),
                    std::invalid_argument);
}

TEST_CASE("tridiagonal eigensolver against the discrete laplacian") {
    const int n = 24;
    std::vector<double> d(n, 2.0), e(n - 1, -1.0);
    const auto res = eig::tridiagonal_eigensolve(d, e, false);
    for (int j = 0; j < n; j++) {
        const double exact = 2.0 - 2.0 * std::cos((j + 1) * pi / (n + 1.0));
        CHECK(res.values[j] == Approx(exact).epsilon(1e-12).scale(4.0));
    }
}

TEST_CASE("hermitian eigensolver properties") {
    const int n = 25;
    Rng rng(7);
    std::vector<cplx> A(n * n);
    for (int i = 0; i < n; i++) {
        A[i * n + i] = cplx(rng.sym(), 0.0);
        for (int j = 0; j < i; j++) {
            const cplx v(rng.sym(), rng.sym());
            A[i * n + j] = v;
            A[j * n + i] = std::conj(v);
        }
    }
    const auto res = eig::hermitian_eigensolve(A, n, true);
    REQUIRE(static_cast<int>(res.values.size()) == n);
    REQUIRE(res.has_vectors);
    double trace = 0.0, sum = 0.0;
    for (int i = 0; i < n; i++) trace += A[i * n + i].real();
    for (double v : res.values) sum += v;
    CHECK(sum == Approx(trace).epsilon(1e-10).scale(n));
    for (int j = 0; j < n; j++) {
        double rmax = 0.0, nrm = 0.0;
        for (int i = 0; i < n; i++) {
            cplx acc = 0.0;
            for (int k = 0; k < n; k++) acc += A[i * n + k] * res.vectors[k * n + j];
            rmax = std::max(rmax, std::abs(acc - res.values[j] * res.vectors[i * n + j]));
            nrm += std::norm(res.vectors[i * n + j]);
        }
        CHECK(rmax < 1e-10 * n);
        CHECK(nrm == Approx(1.0).epsilon(1e-12));
    }
}
