#pragma once

#include <iosfwd>
#include <string>

#include "treenergy/tree.hpp"

namespace treenergy {

/// Edge-list text format: first line is the vertex count n, each further
/// line two whitespace-separated 0-based vertex indices, LF line endings.
/// Throws ParamError naming the offending line for malformed input, and
/// for edge lists that are cyclic or disconnected.
Tree parse_tree(const std::string& text);
Tree parse_tree(std::istream& in);

/// Canonical serialization of the edge-list format: edges normalized to
/// (min,max) and sorted. parse_tree(serialize_tree(t)) reproduces t, and
/// serialize(parse(x)) == x for inputs already in this form.
std::string serialize_tree(const Tree& t);

/// Reader for the standard graph6 format (one graph per string; the
/// optional ">>graph6<<" header is accepted). The decoded graph must be a
/// tree. Strict: rejects bad lengths, out-of-range bytes and nonzero
/// padding bits.
Tree parse_graph6(const std::string& line);

/// Reads a tree from a file; files ending in ".g6" are parsed as graph6,
/// anything else as the edge-list format.
Tree read_tree_file(const std::string& path);

}  // namespace treenergy
