#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "treenergy/matching.hpp"

namespace treenergy {

using Float50 = boost::multiprecision::cpp_bin_float_50;

/// Energy from the exact polynomial route with a tightened per-root
/// tolerance, for resolving near-ties that double precision cannot.
/// error_bound covers every refinement and summation error.
struct HpEnergy {
    Float50 value;
    Float50 error_bound;
};

HpEnergy energy_from_polynomial_hp(const MatchingPolynomial& p, double root_tol = 1e-20);

}  // namespace treenergy
