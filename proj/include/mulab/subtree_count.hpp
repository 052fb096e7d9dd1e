#pragma once

#include <vector>

#include "mulab/bigint.hpp"
#include "mulab/random_models.hpp"
#include "mulab/rooted_tree.hpp"

namespace mulab {

// f: number of non-isomorphic nonempty subtrees rooted at the root.
// f_plus = f + 1 counts the empty choice too; it is the per-child option
// count in the recursion below.
struct SubtreeCount {
    BigInt f;
    BigInt f_plus;
};

// Multisets of `picks` elements drawn from `options` kinds:
// C(options + picks - 1, picks), computed by exact multiply/divide steps
// (every prefix is itself a binomial coefficient, so divisions are exact).
BigInt multichoose(const BigInt& options, int picks);

// Exact count, bottom-up: group each node's children by AhuCode; a class
// with multiplicity m and per-child option count a contributes
// multichoose(a, m) as a factor of f at that node.
SubtreeCount count_subtrees_exact(const RootedTree& t);

// Same recursion, but keeps the count at every node (indexed by node id).
// Used where per-node values matter, e.g. checking the product inequality
// f_plus(v) * j! >= prod f_plus(children) + j! at each node.
std::vector<SubtreeCount> count_subtrees_per_node(const RootedTree& t);

// Independent oracle: enumerate every root-containing connected vertex
// subset, deduplicate by AhuCode. Throws CapExceeded above 20 nodes.
SubtreeCount count_subtrees_bruteforce(const RootedTree& t);

struct LogFStats {
    double mean = 0.0;
    double std_error = 0.0;
    int truncated_count = 0;
    int used_replicas = 0;
};

// Monte Carlo estimate of E ln f(T) for T a Poisson(lambda) Galton-Watson
// tree. Truncated samples are excluded from the average and counted.
// Replica i always uses substream seed.sub(i), so the result is identical
// for any worker count.
LogFStats estimate_log_f(const GwConfig& cfg, int replicas, Seed seed, int workers = 1);

// prod f(T_i) as an exact big integer (empty product = 1), and its natural
// log computed in double precision for large forests.
BigInt product_f_lower_bound(const std::vector<RootedTree>& trees);
double product_log_f(const std::vector<RootedTree>& trees);

}  // namespace mulab
