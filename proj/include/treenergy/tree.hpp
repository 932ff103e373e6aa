#pragma once

#include <optional>
#include <utility>
#include <vector>

namespace treenergy {

/// Undirected tree on vertices 0..n-1. n == 0 is the empty graph.
/// Instances are immutable after construction; build them with make_tree,
/// which validates the tree invariants (n-1 edges, connected, simple).
struct Tree {
    int n = 0;
    std::vector<std::pair<int, int>> edges;   // each pair stored with first < second
    std::vector<std::vector<int>> adj;        // sorted neighbor lists

    bool empty() const { return n == 0; }
};

/// Tree plus a distinguished root. The root is absent only for the
/// empty tree.
struct RootedTree {
    Tree tree;
    std::optional<int> root;
};

/// Validates and finalizes a tree: checks vertex range, self-loops,
/// duplicate edges, edge count, connectivity. Throws ParamError with a
/// message naming the violation.
Tree make_tree(int n, std::vector<std::pair<int, int>> edges);

int max_degree(const Tree& t);

/// Builds the path P_n (handy in tests and as a CLI fixture).
Tree path_tree(int n);

/// Builds the star K_{1,n-1} with center 0.
Tree star_tree(int n);

}  // namespace treenergy
