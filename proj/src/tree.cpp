#include "treenergy/tree.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>

#include "treenergy/errors.hpp"

namespace treenergy {

namespace {

// Union-find over vertex indices; used for connectivity checking.
struct DisjointSet {
    std::vector<int> parent;
    explicit DisjointSet(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[a] = b;
        return true;
    }
};

}  // namespace

Tree make_tree(int n, std::vector<std::pair<int, int>> edges) {
    if (n < 0) throw ParamError("vertex count must be nonnegative");
    if (n == 0) {
        if (!edges.empty()) throw ParamError("empty graph cannot have edges");
        return Tree{};
    }
    if (static_cast<int>(edges.size()) != n - 1)
        throw ParamError("tree on " + std::to_string(n) + " vertices needs " +
                         std::to_string(n - 1) + " edges, got " + std::to_string(edges.size()));

    DisjointSet ds(n);
    std::set<std::pair<int, int>> seen;
    for (auto& [u, v] : edges) {
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw ParamError("edge (" + std::to_string(u) + "," + std::to_string(v) +
                             ") out of vertex range [0," + std::to_string(n) + ")");
        if (u == v) throw ParamError("self-loop at vertex " + std::to_string(u));
        if (u > v) std::swap(u, v);
        if (!seen.insert({u, v}).second)
            throw ParamError("duplicate edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
        if (!ds.unite(u, v))
            throw ParamError("edge (" + std::to_string(u) + "," + std::to_string(v) +
                             ") closes a cycle");
    }
    // n-1 edges and no cycle implies connected, but check explicitly so the
    // error message is the expected one for undersized edge lists.
    for (int v = 1; v < n; ++v)
        if (ds.find(v) != ds.find(0)) throw ParamError("edge list is disconnected");

    Tree t;
    t.n = n;
    t.edges = std::move(edges);
    t.adj.assign(n, {});
    for (const auto& [u, v] : t.edges) {
        t.adj[u].push_back(v);
        t.adj[v].push_back(u);
    }
    for (auto& nbrs : t.adj) std::sort(nbrs.begin(), nbrs.end());
    return t;
}

int max_degree(const Tree& t) {
    int d = 0;
    for (const auto& nbrs : t.adj) d = std::max(d, static_cast<int>(nbrs.size()));
    return d;
}

Tree path_tree(int n) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
    return make_tree(n, std::move(edges));
}

Tree star_tree(int n) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 1; i < n; ++i) edges.emplace_back(0, i);
    return make_tree(n, std::move(edges));
}

}  // namespace treenergy
