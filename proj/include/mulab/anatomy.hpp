#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "mulab/graph.hpp"
#include "mulab/rng.hpp"
#include "mulab/rooted_tree.hpp"

namespace mulab {

// 2-core of the union of complex components, together with the pendant
// trees hanging off it. A component is complex when it has at least two
// independent cycles, i.e. edge count >= vertex count + 1; tree and
// unicyclic components contribute nothing here.
struct CoreDecomposition {
    VertexSet core_vertices;
    // pendant tree sprouting from each core vertex (node 0 is the core
    // vertex itself; a lone root means nothing hangs there)
    std::map<int, RootedTree> pendant;
    // original vertex label of every pendant tree node, same keying
    std::map<int, std::vector<int>> pendant_labels;
    std::vector<int> component_labels;   // per vertex, -1 never occurs
    std::vector<uint8_t> complex_flags;  // per component id
};

// Per-core-vertex canonical codes of the pendant trees, in ascending
// core-vertex order.
struct TypeTuple {
    std::vector<AhuCode> codes;
};

// Similarity statistics over all vertex pairs: xi counts the vertices
// adjacent to both or neither endpoint of a pair.
struct XiStats {
    double alpha = 0.0;
    double beta = 0.0;
    int xi_max = 0;
    std::pair<int, int> argmax_pair{-1, -1};
    std::vector<long long> histogram;  // histogram[k] = number of pairs with xi == k
};

struct ContiguousModel {
    Graph graph;
    bool truncated = false;
};

struct CombResult {
    Graph comb;
    std::vector<int> u_star;  // tooth vertices, original labels, ascending
    int u_star_size = 0;
};

// Mark components, flag the complex ones, peel degree-<=1 vertices inside
// them down to the 2-core, and root the peeled remainder as pendant trees
// at the core vertices they hang from.
CoreDecomposition core_decompose(const Graph& g);

// Codes of the pendant trees per core vertex, ascending vertex order.
TypeTuple type_tuple(const Graph& g, const CoreDecomposition& dec);

// The unique x in (0,1) with x*exp(-x) = lambda*exp(-lambda), by bisection;
// residual <= 1e-12. Throws DomainError for lambda <= 1.
double conjugate_lambda(double lambda);

// The input core with an independent Poisson(lambda_prime) branching tree
// grafted onto every vertex (tree roots identified with core vertices,
// new nodes labelled after the core). Truncated trees set the flag.
ContiguousModel build_contiguous_model(const Graph& core, double lambda_prime, Seed seed);

// Pair statistics xi_{x,x'} = |{v != x,x' : v adjacent to both or to
// neither}| for every unordered pair, computed word-parallel on adjacency
// rows. alpha/beta are the reference location/scale for edge probability p.
// Workers only split the row range; the merge is order-independent.
XiStats xi_stats(const Graph& g, double p, int workers = 1);

// Best induced path found by `tries` randomized greedy extensions (a new
// vertex must have exactly one neighbour on the current path); both ends
// are grown until stuck. The returned sequence is re-verified as induced.
std::vector<int> find_induced_path(const Graph& g, int tries, Seed seed);

// Teeth selection along an induced path: pick one off-path neighbour per
// path vertex, keep those that are distinct, have exactly one neighbour in
// path-plus-picks, and are not adjacent to the two leading or two trailing
// path vertices. Returns the induced subgraph on path plus kept teeth.
// Throws PathNotInduced, or DegreeTooLow when a path vertex has no
// off-path neighbour.
CombResult extract_comb(const Graph& g, const std::vector<int>& path);

// Largest absolute non-trivial eigenvalue of a d-regular graph, by power
// iteration on the complement of the all-ones direction (mean subtraction
// after every multiply). Stops at successive-estimate difference 1e-8 or
// after `iterations` steps; iterations_used reports which came first.
// Throws NotRegular.
double second_eigenvalue(const Graph& g, int iterations, int* iterations_used = nullptr);

// Line-based text forms used by golden-file tests.
std::string decomposition_to_text(const Graph& g, const CoreDecomposition& dec);
std::string type_tuple_to_text(const TypeTuple& t);

}  // namespace mulab
