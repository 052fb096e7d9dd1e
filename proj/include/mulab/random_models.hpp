#pragma once

#include "mulab/graph.hpp"
#include "mulab/rng.hpp"
#include "mulab/rooted_tree.hpp"

namespace mulab {

// Parameters of a Poisson Galton-Watson tree. lambda is the offspring mean;
// max_nodes guards against the (probability-zero for lambda < 1, but finite
// for lambda near 1) event of an impractically large sample.
struct GwConfig {
    double lambda = 0.5;
    int max_nodes = 1000000;
};

struct GwSample {
    RootedTree tree;
    bool truncated = false;
};

// Binomial random graph: each of the C(n,2) pairs is an edge independently
// with probability p. Sparse p uses geometric skipping over the pair index
// so huge n with small p costs O(edges); both regimes are deterministic in
// the seed alone.
Graph sample_gnp(int n, double p, Seed seed);

// Uniform random simple d-regular graph via the pairing (configuration)
// model: match n*d half-edges uniformly, reject the whole matching on any
// loop or multi-edge. Throws RetryLimit after max_retries rejections.
Graph sample_regular(int n, int d, Seed seed, int max_retries = 10000);

// Uniform random subset of [n]: each vertex kept with probability 1/2.
VertexSet sample_subset(int n, Seed seed);

// Poisson(lambda) Galton-Watson tree, generated breadth-first. Trees that
// reach cfg.max_nodes are cut off and flagged, never silently shortened.
GwSample sample_gw_tree(const GwConfig& cfg, Seed seed);

}  // namespace mulab
