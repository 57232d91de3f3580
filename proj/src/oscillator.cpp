#include "nalandau/oscillator.hpp"

#include <cmath>
#include <stdexcept>

#include "nalandau/eigensolver.hpp"

namespace nalandau::osc {

namespace {
constexpr double pi = 3.14159265358979323846;
constexpr double inv_pi_quarter = 0.75112554446494248286;  // pi^(-1/4)
} // namespace

double hermite(int n, double q) {
    if (n < 0) throw std::invalid_argument("osc: hermite order must be >= 0");
    double hm1 = 0.0, h = 1.0;
    for (int k = 0; k < n; k++) {
        const double hp1 = 2.0 * q * h - 2.0 * k * hm1;
        hm1 = h;
        h = hp1;
    }
    return h;
}

double normalized_hermite(int n, double q) {
    if (n < 0) throw std::invalid_argument("osc: hermite order must be >= 0");
    double hm1 = 0.0, h = inv_pi_quarter;
    for (int k = 0; k < n; k++) {
        const double hp1 = std::sqrt(2.0 / (k + 1.0)) * q * h -
                           std::sqrt(static_cast<double>(k) / (k + 1.0)) * hm1;
        hm1 = h;
        h = hp1;
    }
    return h;
}

double hermite_function(int n, double q) {
    return normalized_hermite(n, q) * std::exp(-0.5 * q * q);
}

double hermite_function_derivative(int n, double q) {
    const double lower = (n > 0) ? std::sqrt(2.0 * n) * hermite_function(n - 1, q) : 0.0;
    return lower - q * hermite_function(n, q);
}

RecurrenceResidual recurrence_check(int n, double q) {
    if (n < 0) throw std::invalid_argument("osc: order must be >= 0");
    const double g = std::exp(-0.5 * q * q);
    const double Hn = hermite(n, q);
    const double Hm1 = (n > 0) ? hermite(n - 1, q) : 0.0;
    const double Hp1 = hermite(n + 1, q);
    const double phi = g * Hn;
    const double phim1 = g * Hm1;
    const double phip1 = g * Hp1;
    const double dphi = g * (2.0 * n * Hm1 - q * Hn);
    RecurrenceResidual r;
    r.r1 = dphi + q * phi - 2.0 * n * phim1;
    r.r2 = dphi - q * phi + phip1;
    return r;
}

QuadratureRule gauss_hermite(int order) {
    if (order < 1) throw std::invalid_argument("osc: quadrature order must be >= 1");
    std::vector<double> d(order, 0.0), e(order - 1);
    for (int j = 1; j < order; j++) e[j - 1] = std::sqrt(0.5 * j);
    const auto res = eig::tridiagonal_eigensolve(d, e, true);
    QuadratureRule rule;
    rule.order = order;
    rule.nodes.resize(order);
    rule.weights.resize(order);
    for (int j = 0; j < order; j++) {
        rule.nodes[j] = res.values[j];
        const double v0 = res.vectors[0 * order + j];
        rule.weights[j] = std::sqrt(pi) * v0 * v0;
    }
    return rule;
}

double integrate(const std::function<double(double)>& f, const QuadratureRule& rule) {
    double acc = 0.0;
    for (int j = 0; j < rule.order; j++) {
        const double v = f(rule.nodes[j]);
        if (!std::isfinite(v)) throw std::runtime_error("osc: non-finite integrand");
        acc += rule.weights[j] * v;
    }
    return acc;
}

cplx integrate(const std::function<cplx(double)>& f, const QuadratureRule& rule) {
    cplx acc = 0.0;
    for (int j = 0; j < rule.order; j++) {
        const cplx v = f(rule.nodes[j]);
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw std::runtime_error("osc: non-finite integrand");
        acc += rule.weights[j] * v;
    }
    return acc;
}

std::vector<double> modified_weights(const QuadratureRule& rule) {
    std::vector<double> w(rule.nodes.size());
    for (size_t j = 0; j < w.size(); j++)
        w[j] = std::exp(std::log(rule.weights[j]) +
                        rule.nodes[j] * rule.nodes[j]);
    return w;
}

// ---- operator matrices ----

namespace {

OperatorMatrix make_osc(int nosc) {
    if (nosc < 1) throw std::invalid_argument("osc: basis size must be >= 1");
    OperatorMatrix op;
    op.dim = nosc;
    op.nosc = nosc;
    op.basis_tag = "osc";
    op.m.assign(static_cast<size_t>(nosc) * nosc, {0.0, 0.0});
    return op;
}

void require_same(const OperatorMatrix& A, const OperatorMatrix& B) {
    if (A.dim != B.dim || A.basis_tag != B.basis_tag)
        throw std::invalid_argument("osc: operator basis mismatch");
}

// 2x2 Pauli matrices, sigma[0] = identity
constexpr cplx pauli_mat[4][2][2] = {
    {{{1, 0}, {0, 0}}, {{0, 0}, {1, 0}}},
    {{{0, 0}, {1, 0}}, {{1, 0}, {0, 0}}},
    {{{0, 0}, {0, -1}}, {{0, 1}, {0, 0}}},
    {{{1, 0}, {0, 0}}, {{0, 0}, {-1, 0}}},
};

} // namespace

OperatorMatrix osc_zero(int nosc) { return make_osc(nosc); }

OperatorMatrix osc_identity(int nosc) {
    OperatorMatrix op = make_osc(nosc);
    for (int n = 0; n < nosc; n++) op.at(n, n) = 1.0;
    return op;
}

OperatorMatrix osc_lower(int nosc) {
    OperatorMatrix op = make_osc(nosc);
    for (int n = 1; n < nosc; n++) op.at(n - 1, n) = std::sqrt(static_cast<double>(n));
    return op;
}

OperatorMatrix osc_raise(int nosc) {
    OperatorMatrix op = make_osc(nosc);
    for (int n = 0; n + 1 < nosc; n++) op.at(n + 1, n) = std::sqrt(n + 1.0);
    return op;
}

OperatorMatrix osc_q(int nosc) {
    const double r = 1.0 / std::sqrt(2.0);
    OperatorMatrix op = make_osc(nosc);
    for (int n = 1; n < nosc; n++) {
        op.at(n - 1, n) = r * std::sqrt(static_cast<double>(n));
        op.at(n, n - 1) = r * std::sqrt(static_cast<double>(n));
    }
    return op;
}

OperatorMatrix osc_p(int nosc) {
    const cplx mi{0.0, -1.0};
    const double r = 1.0 / std::sqrt(2.0);
    OperatorMatrix op = make_osc(nosc);
    for (int n = 1; n < nosc; n++) {
        // p = (a - a^dagger)/(i sqrt2)
        op.at(n - 1, n) = mi * r * std::sqrt(static_cast<double>(n));
        op.at(n, n - 1) = -mi * r * std::sqrt(static_cast<double>(n));
    }
    return op;
}

OperatorMatrix osc_number_form(int nosc) {
    OperatorMatrix op = make_osc(nosc);
    for (int n = 0; n < nosc; n++) op.at(n, n) = 2.0 * n + 1.0;
    return op;
}

OperatorMatrix osc_number_form_inverse(int nosc) {
    OperatorMatrix op = make_osc(nosc);
    for (int n = 0; n < nosc; n++) op.at(n, n) = 1.0 / (2.0 * n + 1.0);
    return op;
}

OperatorMatrix add(const OperatorMatrix& A, const OperatorMatrix& B) {
    require_same(A, B);
    OperatorMatrix C = A;
    for (size_t i = 0; i < C.m.size(); i++) C.m[i] += B.m[i];
    return C;
}

OperatorMatrix sub(const OperatorMatrix& A, const OperatorMatrix& B) {
    require_same(A, B);
    OperatorMatrix C = A;
    for (size_t i = 0; i < C.m.size(); i++) C.m[i] -= B.m[i];
    return C;
}

OperatorMatrix mul(const OperatorMatrix& A, const OperatorMatrix& B) {
    require_same(A, B);
    OperatorMatrix C = A;
    const int n = A.dim;
    for (int i = 0; i < n; i++) {
        for (int j = 0; j < n; j++) {
            cplx s = 0.0;
            for (int k = 0; k < n; k++) s += A.at(i, k) * B.at(k, j);
            C.at(i, j) = s;
        }
    }
    return C;
}

OperatorMatrix scale(cplx s, const OperatorMatrix& A) {
    OperatorMatrix C = A;
    for (auto& v : C.m) v *= s;
    return C;
}

OperatorMatrix adjoint(const OperatorMatrix& A) {
    OperatorMatrix C = A;
    const int n = A.dim;
    for (int i = 0; i < n; i++)
        for (int j = 0; j < n; j++) C.at(i, j) = std::conj(A.at(j, i));
    return C;
}

OperatorMatrix commutator(const OperatorMatrix& A, const OperatorMatrix& B) {
    return sub(mul(A, B), mul(B, A));
}

OperatorMatrix tensor_spinor(const OperatorMatrix& orbital, int pauli) {
    if (pauli < 0 || pauli > 3) throw std::invalid_argument("osc: pauli index 0..3");
    if (orbital.basis_tag != "osc")
        throw std::invalid_argument("osc: tensor_spinor expects an orbital operator");
    const int nosc = orbital.nosc;
    OperatorMatrix op;
    op.dim = 2 * nosc;
    op.nosc = nosc;
    op.basis_tag = "osc*spinor";
    op.m.assign(static_cast<size_t>(op.dim) * op.dim, {0.0, 0.0});
    for (int s1 = 0; s1 < 2; s1++) {
        for (int s2 = 0; s2 < 2; s2++) {
            const cplx w = pauli_mat[pauli][s1][s2];
            if (w == cplx{0.0, 0.0}) continue;
            for (int i = 0; i < nosc; i++)
                for (int j = 0; j < nosc; j++)
                    op.at(s1 * nosc + i, s2 * nosc + j) = w * orbital.at(i, j);
        }
    }
    return op;
}

double max_abs_diff_interior(const OperatorMatrix& A, const OperatorMatrix& B,
                             int edge_rows) {
    require_same(A, B);
    const int nosc = A.nosc;
    const int blocks = A.dim / nosc;
    const int keep = nosc - edge_rows;
    double worst = 0.0;
    for (int bi = 0; bi < blocks; bi++)
        for (int bj = 0; bj < blocks; bj++)
            for (int i = 0; i < keep; i++)
                for (int j = 0; j < keep; j++) {
                    const double d = std::abs(A.at(bi * nosc + i, bj * nosc + j) -
                                              B.at(bi * nosc + i, bj * nosc + j));
                    if (d > worst) worst = d;
                }
    return worst;
}

double max_abs_offdiag_hermitian_defect(const OperatorMatrix& A) {
    double worst = 0.0;
    for (int i = 0; i < A.dim; i++)
        for (int j = 0; j < A.dim; j++) {
            const double d = std::abs(A.at(i, j) - std::conj(A.at(j, i)));
            if (d > worst) worst = d;
        }
    return worst;
}

OperatorMatrix build_landau_operator(double z, int n_max, int sign_eB) {
    if (n_max < 0) throw std::invalid_argument("osc: n_max must be >= 0");
    if (sign_eB != 1 && sign_eB != -1)
        throw std::invalid_argument("osc: sign_eB must be +1 or -1");
    const int nosc = n_max + 1;
    const OperatorMatrix osc_part = tensor_spinor(osc_number_form(nosc), 0);
    const OperatorMatrix coupling =
        sub(tensor_spinor(osc_p(nosc), 1), tensor_spinor(osc_q(nosc), 2));
    OperatorMatrix H = add(osc_part, scale(2.0 * z, coupling));
    if (sign_eB == -1) {
        const OperatorMatrix swap = tensor_spinor(osc_identity(nosc), 1);
        H = mul(swap, mul(H, swap));
    }
    return H;
}

std::pair<OperatorMatrix, OperatorMatrix> deformed_momenta_free(double z, double k,
                                                                int nosc) {
    OperatorMatrix P1 = add(tensor_spinor(osc_p(nosc), 0),
                            scale(z, tensor_spinor(osc_identity(nosc), 1)));
    OperatorMatrix P2 = add(scale(k, tensor_spinor(osc_identity(nosc), 0)),
                            scale(z, tensor_spinor(osc_identity(nosc), 2)));
    return {P1, P2};
}

std::pair<OperatorMatrix, OperatorMatrix> deformed_momenta_landau(double z, int nosc) {
    OperatorMatrix P1 = add(tensor_spinor(osc_p(nosc), 0),
                            scale(z, tensor_spinor(osc_identity(nosc), 1)));
    OperatorMatrix P2 = add(scale(-1.0, tensor_spinor(osc_q(nosc), 0)),
                            scale(z, tensor_spinor(osc_identity(nosc), 2)));
    return {P1, P2};
}

} // namespace nalandau::osc
