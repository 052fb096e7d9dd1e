#include "mulab/graph.hpp"

#include <algorithm>
#include <bit>

#include "mulab/errors.hpp"

namespace mulab {

int VertexSet::count() const {
    int c = 0;
    for (uint64_t w : words_) c += std::popcount(w);
    return c;
}

std::vector<int> VertexSet::to_vector() const {
    std::vector<int> out;
    out.reserve(count());
    for (size_t wi = 0; wi < words_.size(); ++wi) {
        uint64_t w = words_[wi];
        while (w) {
            int b = std::countr_zero(w);
            out.push_back(int(wi * 64) + b);
            w &= w - 1;
        }
    }
    return out;
}

VertexSet VertexSet::full(int universe) {
    VertexSet s(universe);
    for (int wi = 0; wi < int(s.words_.size()); ++wi) s.words_[wi] = ~uint64_t(0);
    int spare = int(s.words_.size()) * 64 - universe;
    if (spare > 0 && !s.words_.empty()) s.words_.back() >>= spare;
    return s;
}

VertexSet VertexSet::of(int universe, std::initializer_list<int> vs) {
    VertexSet s(universe);
    for (int v : vs) s.add(v);
    return s;
}

int Graph::degree(int v) const {
    const uint64_t* r = row(v);
    int c = 0;
    for (int i = 0; i < words_; ++i) c += std::popcount(r[i]);
    return c;
}

long long Graph::edge_count() const {
    long long twice = 0;
    for (int v = 0; v < n_; ++v) twice += degree(v);
    return twice / 2;
}

std::vector<int> Graph::degree_sequence() const {
    std::vector<int> d(n_);
    for (int v = 0; v < n_; ++v) d[v] = degree(v);
    return d;
}

Graph induced_subgraph(const Graph& g, const VertexSet& s) {
    if (s.universe() != g.vertex_count())
        throw DomainError("induced_subgraph: vertex set universe mismatch");
    std::vector<int> vs = s.to_vector();
    int k = int(vs.size());
    Graph h(k);
    for (int i = 0; i < k; ++i) {
        const uint64_t* r = g.row(vs[i]);
        for (int j = i + 1; j < k; ++j) {
            int v = vs[j];
            if ((r[v >> 6] >> (v & 63)) & 1u) h.add_edge(i, j);
        }
    }
    return h;
}

Graph complement(const Graph& g) {
    int n = g.vertex_count();
    Graph h(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (!g.has_edge(u, v)) h.add_edge(u, v);
    return h;
}

Graph make_path(int n) {
    Graph g(n);
    for (int v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
    return g;
}

Graph make_cycle(int n) {
    if (n < 3) throw DomainError("make_cycle: need n >= 3");
    Graph g = make_path(n);
    g.add_edge(n - 1, 0);
    return g;
}

Graph make_clique(int n) {
    Graph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
    return g;
}

Graph make_empty(int n) { return Graph(n); }

Graph make_comb(int teeth) {
    if (teeth < 0) throw DomainError("make_comb: negative size");
    Graph g(2 * teeth);
    for (int i = 0; i + 1 < teeth; ++i) g.add_edge(i, i + 1);
    for (int i = 0; i < teeth; ++i) g.add_edge(i, teeth + i);
    return g;
}

ComponentCensus component_census(const Graph& g) {
    int n = g.vertex_count();
    ComponentCensus c;
    c.labels.assign(n, -1);
    std::vector<int> queue;
    for (int s = 0; s < n; ++s) {
        if (c.labels[s] >= 0) continue;
        int id = c.count();
        c.sizes.push_back(0);
        c.edges.push_back(0);
        c.members.emplace_back();
        c.labels[s] = id;
        queue.assign(1, s);
        for (size_t qi = 0; qi < queue.size(); ++qi) {
            int v = queue[qi];
            ++c.sizes[id];
            c.edges[id] += g.degree(v);
            c.members[id].push_back(v);
            for_each_neighbor(g, v, [&](int u) {
                if (c.labels[u] < 0) {
                    c.labels[u] = id;
                    queue.push_back(u);
                }
            });
        }
        c.edges[id] /= 2;
        std::sort(c.members[id].begin(), c.members[id].end());
    }
    return c;
}

}  // namespace mulab
