#include "treenergy/tree_io.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <sstream>

#include "treenergy/errors.hpp"

namespace treenergy {

namespace {

bool parse_int_token(const std::string& tok, long long& out) {
    if (tok.empty()) return false;
    size_t pos = 0;
    try {
        out = std::stoll(tok, &pos);
    } catch (...) {
        return false;
    }
    return pos == tok.size();
}

[[noreturn]] void line_error(int line_no, const std::string& what) {
    throw ParamError("line " + std::to_string(line_no) + ": " + what);
}

}  // namespace

Tree parse_tree(std::istream& in) {
    std::string line;
    int line_no = 0;

    if (!std::getline(in, line)) throw ParamError("line 1: missing vertex count");
    ++line_no;
    long long n = 0;
    {
        std::istringstream ls(line);
        std::string tok, extra;
        ls >> tok;
        if (!parse_int_token(tok, n) || n < 0) line_error(line_no, "expected a vertex count, got \"" + line + "\"");
        if (ls >> extra) line_error(line_no, "trailing content after vertex count");
    }
    if (n > 50'000'000) throw CapError("vertex count " + std::to_string(n) + " is unreasonably large");

    std::vector<std::pair<int, int>> edges;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string ta, tb, extra;
        if (!(ls >> ta)) continue;  // allow blank (incl. trailing) lines
        if (!(ls >> tb)) line_error(line_no, "expected two vertex indices");
        if (ls >> extra) line_error(line_no, "expected exactly two vertex indices");
        long long a = 0, b = 0;
        if (!parse_int_token(ta, a) || !parse_int_token(tb, b))
            line_error(line_no, "expected two vertex indices, got \"" + line + "\"");
        if (a < 0 || a >= n || b < 0 || b >= n)
            line_error(line_no, "edge (" + ta + "," + tb + ") out of vertex range [0," +
                                    std::to_string(n) + ")");
        edges.emplace_back(static_cast<int>(a), static_cast<int>(b));
    }
    return make_tree(static_cast<int>(n), std::move(edges));
}

Tree parse_tree(const std::string& text) {
    std::istringstream in(text);
    return parse_tree(in);
}

std::string serialize_tree(const Tree& t) {
    auto edges = t.edges;
    std::sort(edges.begin(), edges.end());
    std::string out = std::to_string(t.n) + "\n";
    for (const auto& [u, v] : edges) out += std::to_string(u) + " " + std::to_string(v) + "\n";
    return out;
}

Tree parse_graph6(const std::string& input) {
    std::string s = input;
    while (!s.empty() && (s.back() == '\n' || s.back() == '\r')) s.pop_back();
    const std::string header = ">>graph6<<";
    if (s.rfind(header, 0) == 0) s = s.substr(header.size());
    if (s.empty()) throw ParamError("graph6: empty input");

    size_t pos = 0;
    auto byte = [&](size_t i) -> int {
        int c = static_cast<unsigned char>(s[i]);
        if (c < 63 || c > 126) throw ParamError("graph6: byte out of range at position " + std::to_string(i));
        return c - 63;
    };

    // N(n): one byte for n <= 62, '~' + 3 bytes for n <= 258047,
    // '~~' + 6 bytes beyond that.
    long long n = 0;
    if (s[0] != '~') {
        n = byte(0);
        pos = 1;
    } else if (s.size() >= 4 && s[1] != '~') {
        n = (static_cast<long long>(byte(1)) << 12) | (byte(2) << 6) | byte(3);
        pos = 4;
    } else if (s.size() >= 8) {
        n = 0;
        for (int i = 2; i < 8; ++i) n = (n << 6) | byte(i);
        pos = 8;
    } else {
        throw ParamError("graph6: truncated vertex count");
    }
    if (n > 100000) throw CapError("graph6: graph on " + std::to_string(n) + " vertices exceeds supported size");

    long long nbits = n * (n - 1) / 2;
    long long nbytes = (nbits + 5) / 6;
    if (static_cast<long long>(s.size()) - static_cast<long long>(pos) != nbytes)
        throw ParamError("graph6: expected " + std::to_string(nbytes) + " adjacency bytes, got " +
                         std::to_string(s.size() - pos));

    std::vector<std::pair<int, int>> edges;
    long long bit = 0;
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i, ++bit)
            if ((byte(pos + bit / 6) >> (5 - bit % 6)) & 1) edges.emplace_back(i, j);
    // Padding bits of the last byte must be zero.
    for (long long b = nbits; b < nbytes * 6; ++b)
        if ((byte(pos + b / 6) >> (5 - b % 6)) & 1) throw ParamError("graph6: nonzero padding bits");

    try {
        return make_tree(static_cast<int>(n), std::move(edges));
    } catch (const ParamError& e) {
        throw ParamError(std::string("graph6: decoded graph is not a tree: ") + e.what());
    }
}

Tree read_tree_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParamError("cannot open file: " + path);
    if (path.size() > 3 && path.substr(path.size() - 3) == ".g6") {
        std::string line;
        if (!std::getline(in, line)) throw ParamError("empty graph6 file: " + path);
        return parse_graph6(line);
    }
    return parse_tree(in);
}

}  // namespace treenergy
