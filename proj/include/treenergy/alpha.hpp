#pragma once

#include <vector>

#include "treenergy/highprec.hpp"

namespace treenergy {

// Certified evaluation of the asymptotic energy-gap constant
//   alpha_d = 2 sqrt(d) (d-1)^2 * sum_{j>=1} d^-j * c_j,
//   c_j = cot(pi/2j) - 1 (j even),  csc(pi/2j) - 1 (j odd).
// The j = 1 and j = 2 terms vanish identically. The reported value
// satisfies |alpha_d - value| <= tail_bound.
struct AlphaEstimate {
    int d = 0;
    double value = 0.0;
    int j_max = 0;          // series truncated after this index
    double tail_bound = 0.0;
    double requested_eps = 0.0;
};

// c_j / d^j including the prefactor-free trig part; exact zero for j <= 2.
double alpha_term(int d, int j);

// Truncates so that the certified tail is at most eps / 2. eps may not go
// below 1e-12 (double summation cannot certify tighter).
AlphaEstimate alpha(int d, double eps = 1e-10);

// One row per degree, 2 <= d_min <= d_max <= 16.
std::vector<AlphaEstimate> alpha_table(int d_min, int d_max, double eps = 1e-10);

// 50-digit evaluation with j_terms series terms, for cross-checking the
// double-precision path.
Float50 alpha_extended(int d, int j_terms);

}  // namespace treenergy
