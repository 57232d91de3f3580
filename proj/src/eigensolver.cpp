#include "nalandau/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace nalandau::eig {

namespace {

inline double sign_of(double a, double b) { return b >= 0.0 ? std::fabs(a) : -std::fabs(a); }

// Householder reduction of a (row-major n*n, symmetric) to tridiagonal form.
// d receives the diagonal, e the subdiagonal in e[1..n-1]. When yesvecs is
// set, a is overwritten with the accumulated orthogonal transform.
void tred2(std::vector<double>& a, int n, std::vector<double>& d,
           std::vector<double>& e, bool yesvecs) {
    for (int i = n - 1; i > 0; i--) {
        int l = i - 1;
        double h = 0.0, scale = 0.0;
        if (l > 0) {
            for (int k = 0; k < i; k++) scale += std::fabs(a[i * n + k]);
            if (scale == 0.0) {
                e[i] = a[i * n + l];
            } else {
                for (int k = 0; k < i; k++) {
                    a[i * n + k] /= scale;
                    h += a[i * n + k] * a[i * n + k];
                }
                double f = a[i * n + l];
                double g = (f >= 0.0 ? -std::sqrt(h) : std::sqrt(h));
                e[i] = scale * g;
                h -= f * g;
                a[i * n + l] = f - g;
                f = 0.0;
                for (int j = 0; j < i; j++) {
                    if (yesvecs) a[j * n + i] = a[i * n + j] / h;
                    g = 0.0;
                    for (int k = 0; k < j + 1; k++) g += a[j * n + k] * a[i * n + k];
                    for (int k = j + 1; k < i; k++) g += a[k * n + j] * a[i * n + k];
                    e[j] = g / h;
                    f += e[j] * a[i * n + j];
                }
                double hh = f / (h + h);
                for (int j = 0; j < i; j++) {
                    f = a[i * n + j];
                    e[j] = g = e[j] - hh * f;
                    for (int k = 0; k < j + 1; k++)
                        a[j * n + k] -= (f * e[k] + g * a[i * n + k]);
                }
            }
        } else {
            e[i] = a[i * n + l];
        }
        d[i] = h;
    }
    if (yesvecs) d[0] = 0.0;
    e[0] = 0.0;
    for (int i = 0; i < n; i++) {
        if (yesvecs) {
            if (d[i] != 0.0) {
                for (int j = 0; j < i; j++) {
                    double g = 0.0;
                    for (int k = 0; k < i; k++) g += a[i * n + k] * a[k * n + j];
                    for (int k = 0; k < i; k++) a[k * n + j] -= g * a[k * n + i];
                }
            }
            d[i] = a[i * n + i];
            a[i * n + i] = 1.0;
            for (int j = 0; j < i; j++) a[j * n + i] = a[i * n + j] = 0.0;
        } else {
            d[i] = a[i * n + i];
        }
    }
}

// Implicit-shift QL on a tridiagonal matrix. e uses the e[1..n-1] layout on
// entry. z (row-major n*n), when non-null, accumulates the rotations applied
// on top of its initial content.
void tqli(std::vector<double>& d, std::vector<double>& e, int n, double* z) {
    const double eps = std::numeric_limits<double>::epsilon();
    for (int i = 1; i < n; i++) e[i - 1] = e[i];
    e[n - 1] = 0.0;
    for (int l = 0; l < n; l++) {
        int iter = 0;
        int m;
        do {
            for (m = l; m < n - 1; m++) {
                double dd = std::fabs(d[m]) + std::fabs(d[m + 1]);
                if (std::fabs(e[m]) <= eps * dd) break;
            }
            if (m != l) {
                if (iter++ == 50) throw std::runtime_error("eig: QL failed to converge");
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + sign_of(r, g));
                double s = 1.0, c = 1.0, p = 0.0;
                bool underflow = false;
                for (int i = m - 1; i >= l; i--) {
                    double f = s * e[i];
                    double b = c * e[i];
                    r = std::hypot(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        underflow = true;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                    if (z) {
                        for (int k = 0; k < n; k++) {
                            f = z[k * n + i + 1];
                            z[k * n + i + 1] = s * z[k * n + i] + c * f;
                            z[k * n + i] = c * z[k * n + i] - s * f;
                        }
                    }
                }
                if (underflow) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
}

void sort_ascending(SymmetricEigenResult& res) {
    const int n = res.dim;
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](int a, int b) { return res.values[a] < res.values[b]; });
    std::vector<double> v(n);
    for (int j = 0; j < n; j++) v[j] = res.values[idx[j]];
    res.values = std::move(v);
    if (res.has_vectors) {
        std::vector<double> w(static_cast<size_t>(n) * n);
        for (int k = 0; k < n; k++)
            for (int j = 0; j < n; j++) w[k * n + j] = res.vectors[k * n + idx[j]];
        res.vectors = std::move(w);
    }
}

} // namespace

SymmetricEigenResult symmetric_eigensolve(const std::vector<double>& a, int n,
                                          bool want_vectors) {
    if (n <= 0 || a.size() != static_cast<size_t>(n) * n)
        throw std::invalid_argument("eig: matrix size mismatch");
    std::vector<double> work = a;
    SymmetricEigenResult res;
    res.dim = n;
    res.values.assign(n, 0.0);
    std::vector<double> e(n, 0.0);
    tred2(work, n, res.values, e, want_vectors);
    tqli(res.values, e, n, want_vectors ? work.data() : nullptr);
    if (want_vectors) {
        res.vectors = std::move(work);
        res.has_vectors = true;
    }
    sort_ascending(res);
    return res;
}

SymmetricEigenResult tridiagonal_eigensolve(std::vector<double> d,
                                            std::vector<double> e,
                                            bool want_vectors) {
    const int n = static_cast<int>(d.size());
    if (n <= 0 || e.size() != static_cast<size_t>(n) - 1)
        throw std::invalid_argument("eig: tridiagonal size mismatch");
    SymmetricEigenResult res;
    res.dim = n;
    std::vector<double> esh(n, 0.0);
    for (int i = 1; i < n; i++) esh[i] = e[i - 1];
    if (want_vectors) {
        res.vectors.assign(static_cast<size_t>(n) * n, 0.0);
        for (int i = 0; i < n; i++) res.vectors[i * n + i] = 1.0;
    }
    tqli(d, esh, n, want_vectors ? res.vectors.data() : nullptr);
    res.values = std::move(d);
    res.has_vectors = want_vectors;
    sort_ascending(res);
    return res;
}

HermitianEigenResult hermitian_eigensolve(const std::vector<std::complex<double>>& a,
                                          int n, bool want_vectors) {
    if (n <= 0 || a.size() != static_cast<size_t>(n) * n)
        throw std::invalid_argument("eig: matrix size mismatch");
    const int m = 2 * n;
    std::vector<double> big(static_cast<size_t>(m) * m, 0.0);
    for (int i = 0; i < n; i++) {
        for (int j = 0; j < n; j++) {
            const double re = a[i * n + j].real();
            const double im = a[i * n + j].imag();
            big[i * m + j] = re;
            big[(i + n) * m + (j + n)] = re;
            big[i * m + (j + n)] = -im;
            big[(i + n) * m + j] = im;
        }
    }
    SymmetricEigenResult emb = symmetric_eigensolve(big, m, want_vectors);
    HermitianEigenResult res;
    res.dim = n;
    res.values.resize(n);
    for (int j = 0; j < n; j++) res.values[j] = emb.values[2 * j];
    if (want_vectors) {
        res.vectors.assign(static_cast<size_t>(n) * n, {0.0, 0.0});
        for (int j = 0; j < n; j++) {
            for (int k = 0; k < n; k++) {
                res.vectors[k * n + j] = {emb.vectors[k * m + 2 * j],
                                          emb.vectors[(k + n) * m + 2 * j]};
            }
        }
        res.has_vectors = true;
    }
    return res;
}

} // namespace nalandau::eig
