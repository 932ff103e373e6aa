#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <vector>

#include "treenergy/tree.hpp"

namespace treenergy {

using BigInt = boost::multiprecision::cpp_int;

/// Exact matching numbers m(T,k) for k = 0..floor(n/2): the number of
/// k-edge matchings. For a tree these are, up to sign, the coefficients of
/// the adjacency characteristic polynomial
///   phi(x) = sum_k (-1)^k m(T,k) x^(n-2k).
struct MatchingPolynomial {
    int n = 0;
    std::vector<BigInt> m;  // length floor(n/2) + 1

    /// Largest k with m(T,k) != 0 (the matching number).
    int matching_number() const;

    bool operator==(const MatchingPolynomial&) const = default;
};

/// Rooted dynamic program over the tree: per vertex, one coefficient
/// vector for matchings leaving the vertex exposed and one for matchings
/// covering it, merged over children by convolution. All arithmetic exact.
MatchingPolynomial matching_polynomial(const Tree& t);

}  // namespace treenergy
