#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "mulab/graph.hpp"

namespace mulab {

// Default size caps.  Certificates are only attempted up to kCanonicalCap
// vertices (the search is exponential in the worst case); exact
// automorphism counting is capped tighter.
inline constexpr int kCanonicalCap = 32;
inline constexpr int kAutCap = 16;

// Canonical certificate of a graph: byte 0 holds the vertex count, the rest
// are the upper-triangle bits of the canonically relabelled adjacency
// matrix in row order (0,1),(0,2),...,(0,n-1),(1,2),..., packed MSB-first.
// Two graphs get equal bytes exactly when they are isomorphic.  The
// 0-vertex graph has the distinguished 1-byte certificate "\0".
struct CanonicalForm {
    std::string bytes;
    auto operator<=>(const CanonicalForm&) const = default;
    bool operator==(const CanonicalForm&) const = default;
};

CanonicalForm canonical_form(const Graph& g, int cap = kCanonicalCap);

bool are_isomorphic(const Graph& a, const Graph& b, int cap = kCanonicalCap);

// Exact |Aut(g)|, computed by individualization and orbit counting over
// refinement-stable colourings (orbit-stabilizer chain).
uint64_t automorphism_count(const Graph& g, int cap = kAutCap);

// Reusable canonical-labelling engine.  Keeping one instance per worker
// avoids reallocating scratch space when millions of subgraphs are fed
// through it.  Only graphs with at most 64 vertices are supported.
class Canonicalizer {
  public:
    // Certificate bytes (same contents as canonical_form, no cap check).
    // The returned reference points at an internal buffer that is valid
    // until the next run.
    const std::string& run(const Graph& g);

    // Same, for a raw single-word adjacency (n <= 64, rows[v] has bit u set
    // iff uv is an edge).  This is the allocation-free hot path used by the
    // subset enumerator.
    const std::string& run_rows(int n, const uint64_t* rows);

    // Certificate of a vertex-coloured graph: relabellings are constrained
    // to list colour classes in ascending colour order, and the class size
    // histogram is prepended, so equal bytes <=> colour-preserving
    // isomorphism (for inputs with equal colour histograms).
    const std::string& run_coloured(const Graph& g, const std::vector<int>& colours);

    // Colour-refinement only: the stable partition reached from `colours`,
    // as cells of ascending vertex labels, in canonical cell order.
    std::vector<std::vector<int>> refined_cells(const Graph& g,
                                                const std::vector<int>& colours);

  private:
    struct Part {
        std::array<int8_t, 64> order;       // position -> vertex
        std::array<int8_t, 64> cell_start;  // position -> start of its cell
        std::array<int8_t, 64> cell_len;    // valid at cell start positions
        int cells = 0;
    };

    void load(int n, const uint64_t* rows, const std::vector<int>* colours);
    const std::string& finish();
    void refine(Part& p);
    bool discrete(const Part& p) const { return p.cells == n_; }
    int target_cell(const Part& p) const;  // start pos, or -1 if discrete
    void individualize(Part& p, int v);
    void handle_leaf(const Part& p);
    void search(int depth);

    int n_ = 0;
    std::array<uint64_t, 64> adj_{};
    std::string prefix_;  // n byte (+ colour histogram when coloured)

    std::vector<Part> level_;
    std::vector<int8_t> path_;  // individualized vertices along current branch
    std::vector<std::array<int8_t, 64>> generators_;
    std::string best_;
    std::string enc_;
    std::string result_;
    bool have_best_ = false;
    std::array<int8_t, 64> best_order_{};
};

}  // namespace mulab
