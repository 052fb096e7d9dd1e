#pragma once

#include <string>

#include "mulab/graph.hpp"

namespace mulab {

// graph6 text format (McKay).  Bit-exact: encode(decode(s)) == s for any
// valid string, and decode(encode(g)) == g.
std::string to_graph6(const Graph& g);
Graph from_graph6(const std::string& s);

// Edge-list fallback: one "u v" pair per line, 0-indexed, blank lines and
// lines starting with '#' ignored.  The vertex count is max label + 1, so
// trailing isolated vertices cannot be expressed in this format.
std::string to_edge_list(const Graph& g);
Graph from_edge_list(const std::string& text);

// Autodetects graph6 vs edge list: graph6 bytes live in 63..126 (plus the
// optional ">>graph6<<" header), edge lists start with a digit, '#' or
// whitespace (ASCII < 62).
Graph parse_graph(const std::string& text);

}  // namespace mulab
