#include "treenergy/construct.hpp"

#include <optional>
#include <string>

#include "treenergy/errors.hpp"

namespace treenergy {

namespace {

constexpr long long kMaxVertices = 50'000'000;

// Appends a complete d-ary tree C_h to the edge list, returning its root
// index. h >= 1.
int append_complete_dary(int d, int h, int& next_vertex,
                         std::vector<std::pair<int, int>>& edges) {
    int root = next_vertex++;
    if (h > 1) {
        for (int i = 0; i < d; ++i) {
            int child = append_complete_dary(d, h - 1, next_vertex, edges);
            edges.emplace_back(root, child);
        }
    }
    return root;
}

struct TopDigit {
    TerminalKind kind;
    int q = 0;
    int r = 0;
};

// Is M a valid top digit for base d? Returns the branch pattern if so.
std::optional<TopDigit> classify_top(long long M, int d) {
    if (M == 1) return TopDigit{TerminalKind::AllCPrev};
    if (M == d) return TopDigit{TerminalKind::AllC};
    for (int q = 2; q <= d; ++q)
        for (int r = 0; q + r <= d; ++r)
            if (M == d + static_cast<long long>(d - 1) * q +
                         (static_cast<long long>(d) * d - 1) * r)
                return TopDigit{TerminalKind::Mixed, q, r};
    return std::nullopt;
}

// The unique low digit congruent to M mod d: a = (d-1)(1+(d+1)r) with
// r = (-1 - M) mod d. The map r -> -(1+r) mod d is a bijection on
// residues, so the digit choice is forced.
void low_digit(long long M, int d, long long& a, int& r) {
    r = static_cast<int>((((-1 - M) % d) + d) % d);
    a = static_cast<long long>(d - 1) * (1 + static_cast<long long>(d + 1) * r);
}

// Number of complete expansions of M (a chain of low digits ending in a
// top digit). The low-digit continuation is unique at every step, so this
// walks one chain and counts the termination opportunities along it.
int count_expansions(long long M, int d) {
    int count = 0;
    while (M >= 1) {
        if (classify_top(M, d)) ++count;
        long long a;
        int r;
        low_digit(M, d, a, r);
        if (a >= M) break;
        M = (M - a) / d;
    }
    return count;
}

}  // namespace

long long complete_dary_size(int d, int h) {
    if (d < 2) throw ParamError("branching parameter d must be >= 2");
    if (h < 0) throw ParamError("height index h must be >= 0");
    long long size = 0;
    for (int i = 0; i < h; ++i) {
        size = size * d + 1;
        if (size > kMaxVertices) throw CapError("complete d-ary tree too large (d=" +
                                                std::to_string(d) + ", h=" + std::to_string(h) + ")");
    }
    return size;
}

RootedTree complete_dary(int d, int h) {
    long long size = complete_dary_size(d, h);
    if (size == 0) return RootedTree{Tree{}, std::nullopt};
    std::vector<std::pair<int, int>> edges;
    edges.reserve(static_cast<size_t>(size) - 1);
    int next_vertex = 0;
    int root = append_complete_dary(d, h, next_vertex, edges);
    return RootedTree{make_tree(static_cast<int>(size), std::move(edges)), root};
}

long long bn_tree_size(int level) {
    if (level < 0) throw ParamError("apex-tree level must be >= 0");
    if (level > 60) throw CapError("apex-tree level too large");
    return 3 * ((1LL << (level + 1)) - 1) + 1;
}

Tree bn_tree(int level) {
    long long size = bn_tree_size(level);
    if (size > kMaxVertices) throw CapError("apex tree too large (level " + std::to_string(level) + ")");
    std::vector<std::pair<int, int>> edges;
    edges.reserve(static_cast<size_t>(size) - 1);
    int next_vertex = 1;  // apex is vertex 0
    for (int i = 0; i < 3; ++i) {
        int root = append_complete_dary(2, level + 1, next_vertex, edges);
        edges.emplace_back(0, root);
    }
    return make_tree(static_cast<int>(size), std::move(edges));
}

long long DigitalExpansion::value() const {
    long long sum = 0, pow = 1;
    for (size_t k = 0; k < a.size(); ++k) {
        sum += a[k] * pow;
        if (k + 1 < a.size()) pow *= d;
    }
    return sum;
}

DigitalExpansion digital_expansion(long long n, int d) {
    if (n < 1) throw ParamError("vertex count n must be >= 1");
    if (d < 2) throw ParamError("branching parameter d must be >= 2");

    const long long target = (d - 1) * n + 1;
    int total = count_expansions(target, d);
    if (total == 0)
        throw InvariantError("no valid digit expansion for n=" + std::to_string(n) +
                             ", d=" + std::to_string(d));
    if (total > 1)
        throw InvariantError("digit expansion not unique for n=" + std::to_string(n) + ", d=" +
                             std::to_string(d) + " (" + std::to_string(total) + " found)");

    DigitalExpansion ex;
    ex.d = d;
    long long M = target;
    while (true) {
        auto top = classify_top(M, d);
        long long a;
        int r;
        low_digit(M, d, a, r);
        bool continuable = a < M && count_expansions((M - a) / d, d) > 0;
        if (top && !continuable) {
            ex.a.push_back(M);
            ex.terminal = top->kind;
            ex.q_top = top->q;
            ex.r_top = top->r;
            break;
        }
        // Uniqueness was established above, so exactly one branch is open.
        ex.a.push_back(a);
        ex.r.push_back(r);
        M = (M - a) / d;
    }
    ex.l = static_cast<int>(ex.a.size()) - 1;
    if (ex.value() != target)
        throw InvariantError("digit expansion reconstruction mismatch for n=" + std::to_string(n) +
                             ", d=" + std::to_string(d));
    return ex;
}

Tree build_tstar(long long n, int d) {
    if (n > kMaxVertices) throw CapError("n too large");
    DigitalExpansion ex = digital_expansion(n, d);
    const int l = ex.l;

    std::vector<std::pair<int, int>> edges;
    edges.reserve(static_cast<size_t>(n) - 1);
    for (int k = 0; k + 1 <= l; ++k) edges.emplace_back(k, k + 1);  // spine
    int next_vertex = l + 1;

    auto attach = [&](int spine_vertex, int height, int copies) {
        for (int i = 0; i < copies; ++i) {
            if (height == 0) continue;  // empty branch
            int root = append_complete_dary(d, height, next_vertex, edges);
            edges.emplace_back(spine_vertex, root);
        }
    };

    for (int k = 0; k < l; ++k) {
        attach(k, k + 2, ex.r[k]);
        attach(k, k, d - 1 - ex.r[k]);
    }
    switch (ex.terminal) {
        case TerminalKind::AllCPrev:
            if (l < 1)
                throw InvariantError("terminal pattern C_{l-1} reached with l=0 (n=" +
                                     std::to_string(n) + ", d=" + std::to_string(d) + ")");
            attach(l, l - 1, d);
            break;
        case TerminalKind::AllC:
            attach(l, l, d);
            break;
        case TerminalKind::Mixed:
            attach(l, l + 1, ex.q_top);
            attach(l, l + 2, ex.r_top);
            attach(l, l, d - ex.q_top - ex.r_top);
            break;
    }

    if (next_vertex != n)
        throw InvariantError("built tree has " + std::to_string(next_vertex) + " vertices, expected " +
                             std::to_string(n) + " (n=" + std::to_string(n) + ", d=" + std::to_string(d) + ")");
    return make_tree(static_cast<int>(n), std::move(edges));
}

}  // namespace treenergy
