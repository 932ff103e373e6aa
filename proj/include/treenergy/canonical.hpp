#pragma once

#include <compare>
#include <string>

#include "treenergy/tree.hpp"

namespace treenergy {

/// Isomorphism-invariant identifier of a tree: two trees get equal codes
/// iff they are isomorphic. The encoding is the classic rooted canonical
/// form ('(' / ')' string with children sorted), rooted at the tree center;
/// bicentral trees take the lexicographic minimum of the two orientations.
struct CanonicalCode {
    std::string code;

    auto operator<=>(const CanonicalCode&) const = default;
};

CanonicalCode canonical_code(const Tree& t);

/// Rooted canonical form with the root fixed by the caller.
std::string rooted_code(const Tree& t, int root);

/// The 1- or 2-element center (minimum eccentricity) of a tree.
std::vector<int> tree_center(const Tree& t);

}  // namespace treenergy
