#include "treenergy/matching.hpp"

#include <utility>

#include "treenergy/errors.hpp"

namespace treenergy {

namespace {

using Poly = std::vector<BigInt>;  // coefficient k = number of k-edge matchings

Poly add(const Poly& x, const Poly& y) {
    Poly out(std::max(x.size(), y.size()));
    for (size_t i = 0; i < x.size(); ++i) out[i] = x[i];
    for (size_t i = 0; i < y.size(); ++i) out[i] += y[i];
    return out;
}

Poly mul(const Poly& x, const Poly& y) {
    if (x.empty() || y.empty()) return {};
    Poly out(x.size() + y.size() - 1);
    for (size_t i = 0; i < x.size(); ++i) {
        if (x[i] == 0) continue;
        for (size_t j = 0; j < y.size(); ++j) out[i + j] += x[i] * y[j];
    }
    return out;
}

}  // namespace

int MatchingPolynomial::matching_number() const {
    for (int k = static_cast<int>(m.size()) - 1; k >= 0; --k)
        if (m[k] != 0) return k;
    return 0;
}

MatchingPolynomial matching_polynomial(const Tree& t) {
    if (t.n < 1) throw ParamError("matching polynomial of the empty tree is undefined");

    // BFS order from vertex 0; processing it in reverse visits children
    // before parents.
    std::vector<int> parent(t.n, -1), order;
    order.reserve(t.n);
    order.push_back(0);
    parent[0] = -2;  // root marker distinct from "unvisited"
    for (size_t i = 0; i < order.size(); ++i)
        for (int w : t.adj[order[i]])
            if (parent[w] == -1) {
                parent[w] = order[i];
                order.push_back(w);
            }

    // exposed[v]: matchings of the subtree at v that leave v unmatched;
    // covered[v]: those that match v (possibly to a child).
    std::vector<Poly> exposed(t.n), covered(t.n);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        int v = *it;
        Poly exp_v = {BigInt(1)};
        Poly cov_v;
        for (int c : t.adj[v]) {
            if (c == parent[v]) continue;
            Poly total_c = add(exposed[c], covered[c]);
            Poly use_edge = mul(exp_v, exposed[c]);
            use_edge.insert(use_edge.begin(), BigInt(0));  // the edge v-c adds one matched edge
            cov_v = add(mul(cov_v, total_c), use_edge);
            exp_v = mul(exp_v, total_c);
            exposed[c].clear();
            covered[c].clear();
        }
        exposed[v] = std::move(exp_v);
        covered[v] = std::move(cov_v);
    }

    Poly total = add(exposed[0], covered[0]);
    MatchingPolynomial result;
    result.n = t.n;
    result.m.assign(t.n / 2 + 1, BigInt(0));
    if (total.size() > result.m.size())
        throw InvariantError("matching polynomial degree exceeds floor(n/2)");
    for (size_t k = 0; k < total.size(); ++k) result.m[k] = std::move(total[k]);
    if (result.m[0] != 1 || (t.n >= 2 && result.m[1] != t.n - 1))
        throw InvariantError("matching polynomial failed the m0/m1 sanity check");
    return result;
}

}  // namespace treenergy
