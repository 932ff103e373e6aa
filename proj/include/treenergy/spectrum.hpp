#pragma once

#include <string>
#include <vector>

#include "treenergy/matching.hpp"
#include "treenergy/tree.hpp"

namespace treenergy {

/// Adjacency eigenvalues, sorted ascending. Trees are bipartite, so the
/// multiset is symmetric about 0 and sums to 0.
struct Spectrum {
    std::vector<double> values;
};

inline constexpr int kDefaultDenseCap = 8192;
inline constexpr int kPolynomialCap = 256;

/// All eigenvalues of the symmetric 0/1 adjacency matrix via Householder
/// tridiagonalization followed by implicit-shift QL. O(n^3) time,
/// O(n^2) memory; refuses n beyond the cap.
Spectrum spectrum_dense(const Tree& t, int dense_cap = kDefaultDenseCap);

/// Cyclic Jacobi rotations; reference path for n <= 64.
Spectrum spectrum_jacobi(const Tree& t);

/// Exact route: isolates the real roots of the characteristic polynomial
/// reconstructed from the matching numbers, using Sturm sequences over
/// exact integer arithmetic, then refines each root by bisection to
/// root_tol absolute. Capped at kPolynomialCap vertices.
Spectrum spectrum_from_polynomial(const MatchingPolynomial& p, double root_tol = 1e-12,
                                  int cap = kPolynomialCap);

/// One eigenvalue per line, 17 significant digits.
std::string spectrum_to_csv(const Spectrum& s);

/// Eigenvalues of a symmetric matrix given in full row-major storage;
/// exposed for tests. Destroys the input.
std::vector<double> symmetric_eigenvalues_inplace(std::vector<double>& a, int n);

}  // namespace treenergy
