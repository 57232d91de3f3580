#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

// Hermite-basis tooling: function evaluation, the Gauss-Hermite rule obtained
// from the Jacobi matrix, and dense operator matrices on the truncated
// oscillator (x) spinor basis. The dense spectra computed from these matrices
// are the brute-force reference the closed forms are held against.
namespace nalandau::osc {

using cplx = std::complex<double>;

// Matrix identities on truncated operators are asserted away from the cut;
// the top rows of the oscillator block carry the truncation artifacts.
inline constexpr int truncation_edge_rows = 2;

// ---- Hermite evaluation ----

// physicists' H_n(q), forward recurrence
double hermite(int n, double q);

// H_n(q) / sqrt(2^n n! sqrt(pi)); stable normalized recurrence, no factorials
double normalized_hermite(int n, double q);

// normalized_hermite * exp(-q^2/2); orthonormal on the line
double hermite_function(int n, double q);

// d/dq of hermite_function via phi'_n = sqrt(2n) phi_{n-1} - q phi_n
double hermite_function_derivative(int n, double q);

// Residuals of the ladder recurrences for phi_n = exp(-q^2/2) H_n:
//   r1 = phi_n' + q phi_n - 2n phi_{n-1}
//   r2 = phi_n' - q phi_n + phi_{n+1}
// with the derivative taken from H_n' = 2n H_{n-1} (no finite differences).
struct RecurrenceResidual {
    double r1 = 0.0;
    double r2 = 0.0;
};
RecurrenceResidual recurrence_check(int n, double q);

// ---- Gauss-Hermite quadrature ----

struct QuadratureRule {
    int order = 0;
    std::vector<double> nodes;
    std::vector<double> weights;  // include the e^{-q^2} weight
};

// Golub-Welsch on the Jacobi matrix (off-diagonal sqrt(j/2)); weights are
// sqrt(pi) times the squared first eigenvector components.
QuadratureRule gauss_hermite(int order);

// Sum of w_i f(q_i); f must return finite values at every node, otherwise
// std::runtime_error.
double integrate(const std::function<double(double)>& f, const QuadratureRule& rule);
cplx integrate(const std::function<cplx(double)>& f, const QuadratureRule& rule);

// w_i e^{q_i^2}, for integrands that carry their own Gaussian decay
// (e.g. products of two hermite_function values); computed through logs so
// large orders do not overflow.
std::vector<double> modified_weights(const QuadratureRule& rule);

// ---- truncated operator matrices ----

struct OperatorMatrix {
    int dim = 0;
    int nosc = 0;              // oscillator block size (n_max + 1)
    std::string basis_tag;     // "osc" or "osc*spinor"
    std::vector<cplx> m;       // row-major dim*dim

    cplx& at(int i, int j) { return m[static_cast<size_t>(i) * dim + j]; }
    const cplx& at(int i, int j) const { return m[static_cast<size_t>(i) * dim + j]; }
};

OperatorMatrix osc_zero(int nosc);
OperatorMatrix osc_identity(int nosc);
OperatorMatrix osc_lower(int nosc);    // a
OperatorMatrix osc_raise(int nosc);    // a^dagger
OperatorMatrix osc_q(int nosc);        // (a + a^dagger)/sqrt2
OperatorMatrix osc_p(int nosc);        // (a - a^dagger)/(i sqrt2)
// p^2 + q^2 projected onto the truncated basis: exactly diag(2n+1)
OperatorMatrix osc_number_form(int nosc);
// its inverse, diag(1/(2n+1)); the spectrum is strictly positive so this is
// the operator inverse on the basis, never a grid inverse
OperatorMatrix osc_number_form_inverse(int nosc);

OperatorMatrix add(const OperatorMatrix& A, const OperatorMatrix& B);
OperatorMatrix sub(const OperatorMatrix& A, const OperatorMatrix& B);
OperatorMatrix mul(const OperatorMatrix& A, const OperatorMatrix& B);
OperatorMatrix scale(cplx s, const OperatorMatrix& A);
OperatorMatrix adjoint(const OperatorMatrix& A);
OperatorMatrix commutator(const OperatorMatrix& A, const OperatorMatrix& B);

// orbital operator tensored with a Pauli matrix (pauli = 0 gives identity);
// basis index = component * nosc + n (upper block first)
OperatorMatrix tensor_spinor(const OperatorMatrix& orbital, int pauli);

// max |A_ij - B_ij| over rows/cols whose oscillator index stays below
// nosc - edge_rows in both spinor blocks
double max_abs_diff_interior(const OperatorMatrix& A, const OperatorMatrix& B,
                             int edge_rows);
double max_abs_offdiag_hermitian_defect(const OperatorMatrix& A);

// 2mH/(eB) on the truncated basis: diag(2n+1) (x) 1 + 2 z (p sx - q sy).
// sign_eB = -1 swaps the spinor components (conjugation by 1 (x) sx).
// n_max >= 0; |sign_eB| must be 1.
OperatorMatrix build_landau_operator(double z, int n_max, int sign_eB);

// Deformed momenta P_i = p_i + z s_i in the transverse-Fourier picture
// (p1 = p, p2 = k * identity): [P1, P2] = 2 i z^2 s3 exactly.
std::pair<OperatorMatrix, OperatorMatrix> deformed_momenta_free(double z, double k,
                                                                int nosc);
// Landau realization (p1 = p, p2 = -q): picks up the extra i*1 from [p,-q]
// inside the truncated block.
std::pair<OperatorMatrix, OperatorMatrix> deformed_momenta_landau(double z, int nosc);

} // namespace nalandau::osc
