#pragma once

#include <string>
#include <vector>

#include "mulab/graph.hpp"

namespace mulab {

// Rooted tree on nodes 0..size-1, node 0 is the root.
struct RootedTree {
    std::vector<std::vector<int>> children;
    std::vector<int> parent;  // parent[0] == -1

    int size() const { return int(children.size()); }
};

// Canonical code for rooted trees: "()" for a leaf, otherwise the child
// codes sorted lexicographically and wrapped in one more pair of
// parentheses.  Equal codes <=> rooted-isomorphic.
using AhuCode = std::string;

AhuCode ahu_code(const RootedTree& t);

// Build/validate a tree from a parent array (exactly one -1 entry, at
// index 0; every other parent must be a valid node and the structure must
// be acyclic).
RootedTree tree_from_parents(const std::vector<int>& parent);

// Line-based serialization: one "node parent" pair per line, root printed
// with parent -1.
std::string tree_to_text(const RootedTree& t);
RootedTree tree_from_text(const std::string& text);

// View a tree component of g (given by its vertex list) as a RootedTree
// rooted at `root`.  labels_out, when non-null, receives the original
// vertex label of every node.
RootedTree root_component_at(const Graph& g, const std::vector<int>& component,
                             int root, std::vector<int>* labels_out = nullptr);

// Centre vertices of a tree component (one or two).
std::vector<int> tree_centres(const Graph& g, const std::vector<int>& component);

// Unrooted canonical code: the lexicographically smaller of the codes
// rooted at the centre(s), so equal codes <=> isomorphic as unrooted trees.
AhuCode unrooted_tree_code(const Graph& g, const std::vector<int>& component);

// Convenience constructions for tests: a path rooted at one endpoint and a
// star rooted at the centre.
RootedTree rooted_path(int nodes);
RootedTree rooted_star(int leaves);

}  // namespace mulab
