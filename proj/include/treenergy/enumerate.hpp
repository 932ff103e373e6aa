#pragma once

#include <functional>
#include <vector>

#include "treenergy/canonical.hpp"
#include "treenergy/tree.hpp"

namespace treenergy {

// One tree per isomorphism class, every vertex degree at most max_degree.
struct EnumSpec {
    int n = 0;
    int max_degree = 0;
};

inline constexpr int kEnumCap = 20;
inline constexpr int kPruferCap = 9;

// Visits each isomorphism class exactly once, in a fixed deterministic
// order. Trees are rooted at a centroid internally, so no pair of visits
// is isomorphic and none is skipped.
void enumerate_trees(const EnumSpec& spec, const std::function<void(const Tree&)>& visit);

long long count_trees(const EnumSpec& spec);

// Independent census for small n: decodes every Prufer sequence, filters
// by degree, and deduplicates by canonical code. Returns sorted codes.
std::vector<CanonicalCode> prufer_tree_codes(int n, int max_degree);

}  // namespace treenergy
