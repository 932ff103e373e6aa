#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "treenergy/errors.hpp"
#include "treenergy/spectrum.hpp"

namespace treenergy {

namespace {

// Householder reduction of a symmetric matrix to tridiagonal form
// (diagonal d, subdiagonal e), eigenvalues-only variant of the classic
// Handbook/EISPACK tred1. Only the lower triangle of a is referenced or
// written; rows are processed contiguously so the inner loops vectorize.
void householder_tridiag(std::vector<double>& a, int n, std::vector<double>& d,
                         std::vector<double>& e) {
    d.assign(n, 0.0);
    e.assign(n, 0.0);
    std::vector<double> u(n), p(n);

    for (int i = n - 1; i >= 1; --i) {
        double* row_i = &a[static_cast<size_t>(i) * n];
        const int l = i - 1;
        d[i] = row_i[i];
        if (l == 0) {
            e[i] = row_i[0];
            continue;
        }
        double scale = 0.0;
        for (int k = 0; k <= l; ++k) scale += std::fabs(row_i[k]);
        if (scale == 0.0) {
            e[i] = row_i[l];
            continue;
        }
        double h = 0.0;
        for (int k = 0; k <= l; ++k) {
            u[k] = row_i[k] / scale;
            h += u[k] * u[k];
        }
        double f = u[l];
        double g = (f >= 0.0) ? -std::sqrt(h) : std::sqrt(h);
        e[i] = scale * g;
        h -= f * g;
        u[l] = f - g;

        // p = A u over the leading (l+1) block, one pass over the triangle:
        // each row contributes a dot for p[j] and an axpy into p[0..j-1].
        std::fill(p.begin(), p.begin() + l + 1, 0.0);
        for (int j = 0; j <= l; ++j) {
            const double* row_j = &a[static_cast<size_t>(j) * n];
            const double uj = u[j];
            double dot = 0.0;
            for (int k = 0; k < j; ++k) {
                dot += row_j[k] * u[k];
                p[k] += row_j[k] * uj;
            }
            p[j] += dot + row_j[j] * uj;
        }
        // q = (p - (u.p / 2h) u) / h, then A -= u q^T + q u^T.
        f = 0.0;
        for (int j = 0; j <= l; ++j) {
            p[j] /= h;
            f += p[j] * u[j];
        }
        const double hh = f / (h + h);
        for (int j = 0; j <= l; ++j) p[j] -= hh * u[j];
        for (int j = 0; j <= l; ++j) {
            double* row_j = &a[static_cast<size_t>(j) * n];
            const double uj = u[j], qj = p[j];
            for (int k = 0; k <= j; ++k) row_j[k] -= uj * p[k] + qj * u[k];
        }
    }
    d[0] = a[0];
    // e[0] stays 0
}

// Implicit-shift QL iteration on a symmetric tridiagonal matrix;
// eigenvalues land in d. Classic tql1 lineage (Bowdler, Martin, Reinsch,
// Wilkinson), as ported in countless numerical libraries.
void tql_eigenvalues(std::vector<double>& d, std::vector<double>& e, int n) {
    if (n <= 1) return;
    for (int i = 1; i < n; ++i) e[i - 1] = e[i];
    e[n - 1] = 0.0;

    // Subdiagonal entries count as negligible relative to the norm of the
    // whole matrix, not to their local neighbors; spectra with clusters of
    // (near-)equal eigenvalues never deflate under a purely local test.
    double scale = 0.0;
    for (int i = 0; i < n; ++i) {
        double s = std::fabs(d[i]) + std::fabs(e[i]);
        if (i > 0) s += std::fabs(e[i - 1]);
        scale = std::max(scale, s);
    }
    if (scale == 0.0) return;
    const double negligible = 2.3e-16 * scale;

    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m;
        do {
            for (m = l; m < n - 1; ++m) {
                if (std::fabs(e[m]) <= negligible) break;
            }
            if (m != l) {
                if (iter++ == 60)
                    throw InvariantError("QL iteration failed to converge at eigenvalue " +
                                         std::to_string(l));
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
                double s = 1.0, c = 1.0, p = 0.0;
                int i;
                for (i = m - 1; i >= l; --i) {
                    double f = s * e[i];
                    double b = c * e[i];
                    r = std::hypot(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                }
                if (r == 0.0 && i >= l) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
}

void adjacency_matrix(const Tree& t, std::vector<double>& a) {
    a.assign(static_cast<size_t>(t.n) * t.n, 0.0);
    for (const auto& [u, v] : t.edges) {
        a[static_cast<size_t>(u) * t.n + v] = 1.0;
        a[static_cast<size_t>(v) * t.n + u] = 1.0;
    }
}

}  // namespace

std::vector<double> symmetric_eigenvalues_inplace(std::vector<double>& a, int n) {
    std::vector<double> d, e;
    householder_tridiag(a, n, d, e);
    tql_eigenvalues(d, e, n);
    std::sort(d.begin(), d.end());
    return d;
}

Spectrum spectrum_dense(const Tree& t, int dense_cap) {
    if (t.n < 1) throw ParamError("spectrum of the empty tree is undefined");
    if (t.n > dense_cap)
        throw CapError("tree on " + std::to_string(t.n) +
                       " vertices exceeds the dense eigensolver cap " + std::to_string(dense_cap) +
                       "; raise it with --dense-cap");
    std::vector<double> a;
    adjacency_matrix(t, a);
    return Spectrum{symmetric_eigenvalues_inplace(a, t.n)};
}

Spectrum spectrum_jacobi(const Tree& t) {
    if (t.n < 1) throw ParamError("spectrum of the empty tree is undefined");
    if (t.n > 64) throw CapError("the Jacobi reference path is capped at 64 vertices");
    const int n = t.n;
    std::vector<double> a;
    adjacency_matrix(t, a);
    auto at = [&](int i, int j) -> double& { return a[static_cast<size_t>(i) * n + j]; };

    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) off += at(i, j) * at(i, j);
        if (off < 1e-26) break;
        for (int p = 0; p < n - 1; ++p)
            for (int q = p + 1; q < n; ++q) {
                if (std::fabs(at(p, q)) < 1e-300) continue;
                double theta = (at(q, q) - at(p, p)) / (2.0 * at(p, q));
                double tt = std::copysign(1.0, theta) /
                            (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(tt * tt + 1.0);
                double s = tt * c;
                for (int k = 0; k < n; ++k) {
                    double akp = at(k, p), akq = at(k, q);
                    at(k, p) = c * akp - s * akq;
                    at(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    double apk = at(p, k), aqk = at(q, k);
                    at(p, k) = c * apk - s * aqk;
                    at(q, k) = s * apk + c * aqk;
                }
            }
    }
    std::vector<double> vals(n);
    for (int i = 0; i < n; ++i) vals[i] = at(i, i);
    std::sort(vals.begin(), vals.end());
    return Spectrum{vals};
}

std::string spectrum_to_csv(const Spectrum& s) {
    std::string out;
    char buf[64];
    for (double v : s.values) {
        std::snprintf(buf, sizeof(buf), "%.17g\n", v);
        out += buf;
    }
    return out;
}

}  // namespace treenergy
