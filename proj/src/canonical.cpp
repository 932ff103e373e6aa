#include "treenergy/canonical.hpp"

#include <algorithm>
#include <queue>

#include "treenergy/errors.hpp"

namespace treenergy {

std::vector<int> tree_center(const Tree& t) {
    if (t.n == 0) throw ParamError("center of the empty tree is undefined");
    if (t.n == 1) return {0};
    if (t.n == 2) return {0, 1};

    // Peel leaves layer by layer; the last 1 or 2 vertices remain.
    std::vector<int> degree(t.n);
    for (int v = 0; v < t.n; ++v) degree[v] = static_cast<int>(t.adj[v].size());
    std::vector<int> layer;
    for (int v = 0; v < t.n; ++v)
        if (degree[v] == 1) layer.push_back(v);
    int remaining = t.n;
    while (remaining > 2) {
        std::vector<int> next;
        remaining -= static_cast<int>(layer.size());
        for (int v : layer) {
            degree[v] = 0;
            for (int w : t.adj[v])
                if (degree[w] > 0 && --degree[w] == 1) next.push_back(w);
        }
        layer = std::move(next);
    }
    std::sort(layer.begin(), layer.end());
    return layer;
}

std::string rooted_code(const Tree& t, int root) {
    if (root < 0 || root >= t.n) throw ParamError("root out of range");

    // Iterative post-order so deep paths cannot overflow the stack.
    std::vector<int> parent(t.n, -1), order;
    order.reserve(t.n);
    std::vector<int> stack = {root};
    parent[root] = root;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        order.push_back(v);
        for (int w : t.adj[v])
            if (parent[w] == -1) {
                parent[w] = v;
                stack.push_back(w);
            }
    }

    std::vector<std::vector<std::string>> kids(t.n);
    std::string result;
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        int v = *it;
        auto& ks = kids[v];
        std::sort(ks.begin(), ks.end());
        std::string s = "(";
        for (auto& k : ks) s += k;
        s += ")";
        if (v == root)
            result = std::move(s);
        else
            kids[parent[v]].push_back(std::move(s));
    }
    return result;
}

CanonicalCode canonical_code(const Tree& t) {
    if (t.n == 0) throw ParamError("canonical code of the empty tree is undefined");
    auto centers = tree_center(t);
    std::string best = rooted_code(t, centers[0]);
    if (centers.size() == 2) {
        std::string alt = rooted_code(t, centers[1]);
        if (alt < best) best = std::move(alt);
    }
    return CanonicalCode{std::move(best)};
}

}  // namespace treenergy
