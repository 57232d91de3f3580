#pragma once

#include <complex>
#include <vector>

// Dense symmetric eigensolver: Householder tridiagonalization followed by
// implicit-shift QL. Kept in-repo so the same validated kernel serves both the
// Gauss-Hermite rule (Jacobi matrices) and brute-force spectra of truncated
// operators, with no external linear-algebra dependency.
namespace nalandau::eig {

struct SymmetricEigenResult {
    int dim = 0;
    std::vector<double> values;   // ascending
    std::vector<double> vectors;  // row-major; vectors[k*dim + j] = component k of eigenvector j
    bool has_vectors = false;
};

// a: row-major n*n, symmetric (only the full matrix is read). Throws
// std::invalid_argument on size mismatch, std::runtime_error if QL fails
// to converge.
SymmetricEigenResult symmetric_eigensolve(const std::vector<double>& a, int n,
                                          bool want_vectors);

// Tridiagonal variant: d has n entries, e has n-1 off-diagonal entries.
SymmetricEigenResult tridiagonal_eigensolve(std::vector<double> d,
                                            std::vector<double> e,
                                            bool want_vectors);

// Hermitian matrices are handled through the real symmetric embedding
// [[Re, -Im], [Im, Re]] of twice the dimension; every eigenvalue of the
// complex matrix shows up exactly twice.
struct HermitianEigenResult {
    int dim = 0;                                     // complex dimension n
    std::vector<double> values;                      // n ascending (deduplicated pairs)
    std::vector<std::complex<double>> vectors;       // row-major n*n, column j for values[j]
    bool has_vectors = false;
};

HermitianEigenResult hermitian_eigensolve(const std::vector<std::complex<double>>& a,
                                          int n, bool want_vectors);

} // namespace nalandau::eig
