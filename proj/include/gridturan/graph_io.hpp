#pragma once

#include "gridturan/graph.hpp"

#include <iosfwd>
#include <string>

namespace gridturan {

/// Canonical edge-list text format, used by every CLI command:
///   line 1: "<n> <m>", then m lines "<u> <v>" with 0 <= u < v < n, sorted
///   lexicographically ascending. Lines beginning with '#' are comments and
///   may appear anywhere. Any violation (self-loop, duplicate, out-of-range,
///   unsorted pair or ordering) raises parse_error naming the line.
Graph parse_graph(std::istream& in);
Graph parse_graph(const std::string& text);
Graph read_graph_file(const std::string& path);

/// Canonical serialization; parse(write(g)) == g and write(parse(x)) == x
/// for every canonical file without comments.
std::string write_graph(const Graph& g);
void write_graph_file(const Graph& g, const std::string& path);

} // namespace gridturan
