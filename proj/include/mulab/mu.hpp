#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mulab/bigint.hpp"
#include "mulab/graph.hpp"
#include "mulab/rng.hpp"

namespace mulab {

// mu(G) counts pairwise non-isomorphic induced subgraphs over all 2^n
// vertex subsets, the empty subgraph included, so mu(K_n) = n + 1.
inline constexpr int kMuExactCap = 24;
inline constexpr int kMuNaiveCap = 10;

// Result record shared by the exact engine, the samplers and the bound
// certificates.  Bounds are log2 values tagged with the method that
// produced them; notes carry reasons for certificates that did not apply.
struct MuReport {
    std::optional<BigInt> exact;
    std::vector<std::pair<std::string, double>> lower_bounds;
    std::vector<std::pair<std::string, double>> upper_bounds;
    std::vector<std::pair<std::string, std::string>> notes;
    uint64_t subsets_enumerated = 0;
    double elapsed = 0.0;

    // Collision statistics from mu_sample_lower; negative when unset.
    double collision_freq = -1.0;
    double collision_freq_stderr = -1.0;

    // Largest lower / smallest upper bound, -inf / +inf when absent.
    double best_lower() const;
    double best_upper() const;

    // Throws DomainError unless every lower bound <= every upper bound and
    // exact, when present, lies inside all bound pairs (small float slack).
    void validate() const;
};

// Single-line serialization with stable field order and fixed formatting.
std::string mu_report_to_line(const MuReport& r);

// Exact mu by enumerating all 2^n subsets, canonicalizing each induced
// subgraph and counting distinct certificates.  The subset range is split
// into contiguous blocks, one per worker, each building a private
// certificate set; the merged union makes the result independent of the
// worker count.  Throws CapExceeded above `cap` vertices.
MuReport mu_exact(const Graph& g, int workers = 1, int cap = kMuExactCap);

// Independent oracle: groups subsets into isomorphism classes by brute
// force over vertex permutations, no canonical forms involved.  Throws
// CapExceeded above kMuNaiveCap vertices.
BigInt mu_oracle_naive(const Graph& g);

// Monte Carlo lower bounds from `samples` uniform random subsets: the
// number of distinct certificates seen, and the collision bound
// log2(pair count / colliding pair count), an estimate of log2 of the
// type-distribution support since two independent uniform subsets collide
// in type with probability sum p_i^2 >= 1/support.  Subsets larger than
// `cap` are rejected and counted (a documented bias towards small types
// when n > cap).
MuReport mu_sample_lower(const Graph& g, uint64_t samples, Seed seed, int cap = 32);

// Certified lower bounds, all computed, individually tagged, sorted best
// first (inapplicable ones are skipped with a reason in notes):
//   tree-components  log2 prod (multiplicity_t + 1) over distinct tree
//                    component types t: distinct sub-multisets of tree
//                    components induce non-isomorphic forests.
//   comb             u_star_size - 1 from an induced path with pendant
//                    teeth: tooth subsets give combs that only collide
//                    under reflection of the spine.
//   type-tuples      sum_v log2 f(T_v) - log2 |Aut(core)| over pendant
//                    trees T_v of the 2-core of complex components:
//                    distinct pendant-subtree tuples collide only via a
//                    core automorphism.  |Aut| is exact for small cores,
//                    otherwise bounded by the colour-refinement cells.
// The xi-pair construction from the dense concentration analysis counts
// subset pairs, not isomorphism types, so it is deliberately not offered
// as a lower bound here.
// p_hint, when set, is the edge density used to skip hopeless certificate
// attempts (an induced-path comb search on a near-complete graph).
MuReport mu_lower_certificates(const Graph& g, Seed seed,
                               std::optional<double> p_hint = std::nullopt,
                               int path_tries = 20);

// Upper bound for graphs whose components are mostly small: with U the
// vertices in components larger than t,
//   log2 mu <= |U| + sum_{k<=t} N_k * log2(n+1)
// where N_k counts the connected isomorphism classes a size-k component of
// an induced subgraph can realize: exact tree and unicyclic class counts
// for k <= 10, Otter-style bounds k*4^k and k^3*4^k beyond, plus the
// classes realized inside complex small components, enumerated exactly.
// t <= 0 picks the default ceil(2 ln ln n).
MuReport mu_upper_subcritical(const Graph& g, int t = 0);

// Spread of |E(G[W])| over subsets W of u against its expectation:
// exhaustive when |u| <= 20, otherwise `trials` random subsets, rejecting
// |W| < min_size.  The denominator is C(|W|,2) * p with p the given or
// empirical density, or d|W|^2/(2n) in regular mode (d = average degree).
struct EdgeConcentrationReport {
    double min_ratio = 0.0;
    double max_ratio = 0.0;
    int threshold_size = 0;   // smallest |W| tested
    uint64_t subsets_tested = 0;
};

EdgeConcentrationReport edge_concentration(const Graph& g, const VertexSet& u, int min_size,
                                           int trials, Seed seed, double p = -1.0,
                                           bool regular_mode = false);

// Natural log of the main term of the subgraph-containment probability in
// a random d-regular graph on n vertices:
//   ln prod_j d(d-1)...(d-deg_j+1) - |E(H)| ln 2 - sum_{i<|E(H)|} ln(dn/2 - i)
// computed with log-gamma for stability.  Throws DomainError when some
// degree exceeds d, the degree sum is not 2*h_edges, or h_edges > dn/2.
double mckay_log_prob(int n, int d, const std::vector<int>& h_degrees, long long h_edges);

}  // namespace mulab
