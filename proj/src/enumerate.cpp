// Free trees are generated through their centroid: a tree with one
// centroid is a root plus a multiset of rooted subtrees each smaller than
// half the tree, and a tree with two centroids is an edge joining two
// rooted halves of equal size. Rooted shapes come from a catalog of
// canonical rooted trees with bounded branching, and multisets are chosen
// as non-increasing index sequences, so every isomorphism class appears
// exactly once.

#include "treenergy/enumerate.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <utility>

#include "treenergy/errors.hpp"

namespace treenergy {

namespace {

struct CatalogEntry {
    std::string code;  // nested parentheses, children concatenated in generation order
    int size = 0;
};

// All canonical rooted trees with `size` vertices and at most `branch`
// children per node, ordered by size. Entries of equal size keep their
// generation order; only a consistent total order matters.
class RootedCatalog {
  public:
    RootedCatalog(int max_size, int branch) {
        if (max_size >= 1) entries_.push_back({"()", 1});
        for (int s = 2; s <= max_size; ++s) {
            int first_of_size = static_cast<int>(entries_.size());
            std::string acc;
            emit_children(s - 1, branch, first_of_size - 1, acc,
                          [&](const std::string& inner) { entries_.push_back({"(" + inner + ")", s}); });
        }
    }

    const std::vector<CatalogEntry>& entries() const { return entries_; }

    // Appends every non-increasing index sequence with total size
    // `remaining`, at most `slots` picks, indices <= max_idx.
    template <typename Sink>
    void emit_children(int remaining, int slots, int max_idx, std::string& acc, Sink&& sink) const {
        if (remaining == 0) {
            sink(acc);
            return;
        }
        if (slots == 0) return;
        for (int i = max_idx; i >= 0; --i) {
            const CatalogEntry& e = entries_[i];
            if (e.size > remaining) continue;
            size_t mark = acc.size();
            acc += e.code;
            emit_children(remaining - e.size, slots - 1, i, acc, sink);
            acc.resize(mark);
        }
    }

  private:
    std::vector<CatalogEntry> entries_;
};

// Decodes a parenthesis code into edges; vertices are numbered in the
// order opening parentheses appear, starting at next_id.
void decode_code(const std::string& code, int& next_id, std::vector<std::pair<int, int>>& edges) {
    std::vector<int> stack;
    for (char ch : code) {
        if (ch == '(') {
            int v = next_id++;
            if (!stack.empty()) edges.emplace_back(stack.back(), v);
            stack.push_back(v);
        } else {
            stack.pop_back();
        }
    }
}

void check_spec(const EnumSpec& spec) {
    if (spec.n < 1) throw ParamError("tree enumeration needs n >= 1");
    if (spec.max_degree < 1) throw ParamError("tree enumeration needs max_degree >= 1");
    if (spec.n >= 3 && spec.max_degree < 2)
        throw ParamError("no tree on " + std::to_string(spec.n) + " vertices has max degree 1");
    if (spec.n > kEnumCap)
        throw CapError("tree enumeration capped at n = " + std::to_string(kEnumCap) + ", got " +
                       std::to_string(spec.n));
}

}  // namespace

void enumerate_trees(const EnumSpec& spec, const std::function<void(const Tree&)>& visit) {
    check_spec(spec);
    const int n = spec.n;
    if (n == 1) {
        visit(make_tree(1, {}));
        return;
    }

    RootedCatalog catalog(n / 2, spec.max_degree - 1);
    const auto& entries = catalog.entries();

    auto emit_tree = [&](const std::string& code) {
        std::vector<std::pair<int, int>> edges;
        int next_id = 0;
        decode_code(code, next_id, edges);
        visit(make_tree(n, std::move(edges)));
    };

    // One centroid: branches strictly smaller than n/2.
    int branch_limit = (n - 1) / 2;
    int max_idx = -1;
    while (max_idx + 1 < static_cast<int>(entries.size()) && entries[max_idx + 1].size <= branch_limit)
        ++max_idx;
    std::string acc;
    catalog.emit_children(n - 1, spec.max_degree, max_idx, acc,
                          [&](const std::string& inner) { emit_tree("(" + inner + ")"); });

    // Two centroids: an edge joining equal halves.
    if (n % 2 == 0) {
        int half = n / 2;
        int lo = 0;
        while (lo < static_cast<int>(entries.size()) && entries[lo].size < half) ++lo;
        int hi = lo;
        while (hi < static_cast<int>(entries.size()) && entries[hi].size == half) ++hi;
        for (int i = lo; i < hi; ++i) {
            for (int j = i; j < hi; ++j) {
                std::vector<std::pair<int, int>> edges;
                int next_id = 0;
                decode_code(entries[i].code, next_id, edges);
                int second_root = next_id;
                decode_code(entries[j].code, next_id, edges);
                edges.emplace_back(0, second_root);
                visit(make_tree(n, std::move(edges)));
            }
        }
    }
}

long long count_trees(const EnumSpec& spec) {
    long long count = 0;
    enumerate_trees(spec, [&](const Tree&) { ++count; });
    return count;
}

std::vector<CanonicalCode> prufer_tree_codes(int n, int max_degree) {
    if (n < 1) throw ParamError("Prufer census needs n >= 1");
    if (max_degree < 1) throw ParamError("Prufer census needs max_degree >= 1");
    if (n > kPruferCap)
        throw CapError("Prufer census capped at n = " + std::to_string(kPruferCap) + ", got " +
                       std::to_string(n));

    std::set<CanonicalCode> codes;
    if (n == 1) {
        codes.insert(canonical_code(make_tree(1, {})));
    } else if (n == 2) {
        if (max_degree >= 1) codes.insert(canonical_code(make_tree(2, {{0, 1}})));
    } else {
        std::vector<int> seq(n - 2, 0);
        std::vector<int> deg(n);
        std::vector<std::pair<int, int>> edges;
        while (true) {
            deg.assign(n, 1);
            for (int x : seq) ++deg[x];
            if (*std::max_element(deg.begin(), deg.end()) <= max_degree) {
                edges.clear();
                std::vector<int> d = deg;
                int ptr = 0;
                while (d[ptr] != 1) ++ptr;
                int leaf = ptr;
                for (int x : seq) {
                    edges.emplace_back(leaf, x);
                    if (--d[x] == 1 && x < ptr) {
                        leaf = x;
                    } else {
                        ++ptr;
                        while (d[ptr] != 1) ++ptr;
                        leaf = ptr;
                    }
                }
                edges.emplace_back(leaf, n - 1);
                codes.insert(canonical_code(make_tree(n, edges)));
            }
            int pos = n - 3;
            while (pos >= 0 && seq[pos] == n - 1) seq[pos--] = 0;
            if (pos < 0) break;
            ++seq[pos];
        }
    }
    return {codes.begin(), codes.end()};
}

}  // namespace treenergy
