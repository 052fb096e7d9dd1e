#pragma once

#include <cassert>
#include <cstdint>
#include <vector>

namespace mulab {

// Subset of the vertices {0, ..., n-1}, stored as a bit mask.
class VertexSet {
  public:
    VertexSet() = default;
    explicit VertexSet(int universe)
        : n_(universe), words_((universe + 63) / 64, 0) {
        assert(universe >= 0);
    }

    int universe() const { return n_; }

    bool contains(int v) const {
        assert(v >= 0 && v < n_);
        return (words_[v >> 6] >> (v & 63)) & 1u;
    }
    void add(int v) {
        assert(v >= 0 && v < n_);
        words_[v >> 6] |= uint64_t(1) << (v & 63);
    }
    void remove(int v) {
        assert(v >= 0 && v < n_);
        words_[v >> 6] &= ~(uint64_t(1) << (v & 63));
    }

    int count() const;
    std::vector<int> to_vector() const;  // ascending vertex labels

    const std::vector<uint64_t>& words() const { return words_; }
    std::vector<uint64_t>& words() { return words_; }

    static VertexSet full(int universe);
    static VertexSet of(int universe, std::initializer_list<int> vs);

    bool operator==(const VertexSet& o) const = default;

  private:
    int n_ = 0;
    std::vector<uint64_t> words_;
};

// Simple undirected graph on labelled vertices {0, ..., n-1}.
// Adjacency is kept as n rows of n bits so that row operations (popcount,
// and/or masks) run a word at a time.  No loops, no multi-edges.
class Graph {
  public:
    Graph() = default;
    explicit Graph(int n) : n_(n), words_((n + 63) / 64) {
        assert(n >= 0);
        bits_.assign(size_t(n_) * words_, 0);
    }

    int vertex_count() const { return n_; }
    int words_per_row() const { return words_; }

    bool has_edge(int u, int v) const {
        assert(u >= 0 && u < n_ && v >= 0 && v < n_);
        return (row(u)[v >> 6] >> (v & 63)) & 1u;
    }
    void add_edge(int u, int v) {
        assert(u != v);
        row(u)[v >> 6] |= uint64_t(1) << (v & 63);
        row(v)[u >> 6] |= uint64_t(1) << (u & 63);
    }
    void remove_edge(int u, int v) {
        row(u)[v >> 6] &= ~(uint64_t(1) << (v & 63));
        row(v)[u >> 6] &= ~(uint64_t(1) << (u & 63));
    }

    const uint64_t* row(int v) const { return bits_.data() + size_t(v) * words_; }
    uint64_t* row(int v) { return bits_.data() + size_t(v) * words_; }

    // First word of a row; whole adjacency row when n <= 64.
    uint64_t row64(int v) const {
        assert(n_ <= 64);
        return n_ == 0 ? 0 : row(v)[0];
    }

    int degree(int v) const;
    long long edge_count() const;
    std::vector<int> degree_sequence() const;  // by vertex label

    bool operator==(const Graph& o) const = default;

  private:
    int n_ = 0;
    int words_ = 0;
    std::vector<uint64_t> bits_;
};

// Calls fn(u) for every neighbour u of v, in ascending order.
template <typename F>
void for_each_neighbor(const Graph& g, int v, F&& fn) {
    const uint64_t* row = g.row(v);
    for (int w = 0; w < g.words_per_row(); ++w)
        for (uint64_t bits = row[w]; bits; bits &= bits - 1)
            fn((w << 6) + __builtin_ctzll(bits));
}

// Graph induced on the vertices of s, relabelled 0..|s|-1 in ascending
// order of their original labels.
Graph induced_subgraph(const Graph& g, const VertexSet& s);

Graph complement(const Graph& g);

// Path/cycle/clique/empty constructions used all over the tests.
Graph make_path(int n);    // vertices 0-1-2-...-(n-1)
Graph make_cycle(int n);   // requires n >= 3
Graph make_clique(int n);
Graph make_empty(int n);

// Comb with `teeth` spine vertices: spine path 0..teeth-1, tooth i is the
// pendant vertex teeth+i attached to spine vertex i.  2*teeth vertices.
Graph make_comb(int teeth);

// Connected components with per-component size and edge count, labelled in
// order of their smallest vertex.
struct ComponentCensus {
    std::vector<int> labels;        // per vertex, component id
    std::vector<int> sizes;         // per component id
    std::vector<long long> edges;   // per component id
    std::vector<std::vector<int>> members;  // per component id, ascending

    int count() const { return int(sizes.size()); }
    bool is_tree(int c) const { return edges[c] == sizes[c] - 1; }
    bool is_unicyclic(int c) const { return edges[c] == sizes[c]; }
};

ComponentCensus component_census(const Graph& g);

}  // namespace mulab
