#pragma once

#include <vector>

#include "treenergy/tree.hpp"

namespace treenergy {

/// Complete d-ary tree family: C_0 is the empty graph, C_1 a single vertex,
/// C_h a root with d subtrees C_{h-1}. Vertex count (d^h - 1)/(d - 1);
/// vertices are numbered root-first, children depth-first.
RootedTree complete_dary(int d, int h);

/// Vertex count of complete_dary(d, h) without building it.
long long complete_dary_size(int d, int h);

/// Apex family: one vertex joined to the roots of three disjoint complete
/// binary trees of 2^(level+1) - 1 vertices each, for a total of
/// 3 * 2^(level+1) - 2 vertices. The apex is vertex 0.
Tree bn_tree(int level);

long long bn_tree_size(int level);

enum class TerminalKind {
    AllCPrev,  // top digit 1: d branches C_{l-1}
    AllC,      // top digit d: d branches C_l
    Mixed,     // top digit d + (d-1)q + (d^2-1)r: q branches C_{l+1}, r branches C_{l+2}, rest C_l
};

/// Restricted-digit expansion of (d-1)n + 1 in base d. Low digits a_k,
/// k < l, come from {(d-1)(1 + (d+1)r) : 0 <= r <= d-1}; the top digit a_l
/// encodes the terminal branch pattern. The expansion is unique; the
/// constructor verifies that and aborts (InvariantError) otherwise.
struct DigitalExpansion {
    int d = 2;
    int l = 0;                 // top index
    std::vector<long long> a;  // digits a_0..a_l
    std::vector<int> r;        // r_0..r_{l-1}: count of large (C_{k+2}) branches at level k
    TerminalKind terminal = TerminalKind::AllC;
    int q_top = 0;             // Mixed only: count of C_{l+1} branches
    int r_top = 0;             // Mixed only: count of C_{l+2} branches

    /// Reconstructs sum a_k d^k; equals (d-1)n + 1 for the n it came from.
    long long value() const;
};

DigitalExpansion digital_expansion(long long n, int d);

/// Minimal-energy tree on n vertices with maximum degree <= d+1, built
/// from digital_expansion(n, d): a spine v_0..v_l with d-1 branches per
/// interior spine vertex (r_k of them C_{k+2}, the rest C_k) and d
/// branches at v_l per the terminal pattern. Spine vertices come first,
/// then branches depth-first.
Tree build_tstar(long long n, int d);

}  // namespace treenergy
