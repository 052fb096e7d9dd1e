#include "mulab/random_models.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "mulab/errors.hpp"

namespace mulab {

namespace {

// Pairs (u,v), u<v, are indexed row-major: all pairs with first vertex 0,
// then first vertex 1, and so on. The decoder walks forward only, which is
// all the skip sampler needs.
struct PairDecoder {
    int n;
    int u = 0;
    long long row_base = 0;  // index of pair (u, u+1)

    std::pair<int, int> at(long long idx) {
        while (idx >= row_base + (n - 1 - u)) {
            row_base += n - 1 - u;
            ++u;
        }
        return {u, u + 1 + int(idx - row_base)};
    }
};

}  // namespace

Graph sample_gnp(int n, double p, Seed seed) {
    Graph g(n);
    if (n < 2 || p <= 0.0) return g;
    long long total = (long long)n * (n - 1) / 2;
    if (p >= 1.0) return make_clique(n);
    Rng rng(seed);
    if (p < 0.1) {
        // Geometric skipping: jump straight to the next present edge, so the
        // cost is proportional to the number of edges, not to C(n,2).
        double log1mp = std::log1p(-p);
        PairDecoder dec{n};
        long long idx = -1;
        while (true) {
            double u = rng.next_double();
            double skip = std::floor(std::log1p(-u) / log1mp);
            idx += 1 + (long long)skip;
            if (idx >= total) break;
            auto [a, b] = dec.at(idx);
            g.add_edge(a, b);
        }
    } else {
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (rng.bernoulli(p)) g.add_edge(u, v);
    }
    return g;
}

Graph sample_regular(int n, int d, Seed seed, int max_retries) {
    if (d < 1 || d >= n) throw DomainError("sample_regular: need 1 <= d < n");
    if ((long long)n * d % 2 != 0) throw DomainError("sample_regular: n*d must be even");
    Rng rng(seed);
    int m = n * d;
    std::vector<int> half(m);
    for (int attempt = 0; attempt < max_retries; ++attempt) {
        // half-edge i belongs to vertex i/d; shuffle and pair consecutive
        for (int i = 0; i < m; ++i) half[i] = i / d;
        for (int i = m - 1; i > 0; --i)
            std::swap(half[i], half[rng.next_below(uint64_t(i) + 1)]);
        Graph g(n);
        bool simple = true;
        for (int i = 0; i < m; i += 2) {
            int a = half[i], b = half[i + 1];
            if (a == b || g.has_edge(a, b)) {
                simple = false;
                break;
            }
            g.add_edge(a, b);
        }
        if (simple) return g;
    }
    throw RetryLimit("sample_regular: no simple matching within retry budget");
}

VertexSet sample_subset(int n, Seed seed) {
    VertexSet s(n);
    Rng rng(seed);
    auto& words = s.words();
    for (size_t w = 0; w < words.size(); ++w) words[w] = rng.next_u64();
    if (n % 64 != 0 && !words.empty())
        words.back() &= (uint64_t(1) << (n % 64)) - 1;
    return s;
}

GwSample sample_gw_tree(const GwConfig& cfg, Seed seed) {
    if (cfg.lambda <= 0.0) throw DomainError("sample_gw_tree: lambda must be positive");
    if (cfg.max_nodes < 1) throw DomainError("sample_gw_tree: max_nodes must be positive");
    Rng rng(seed);
    GwSample out;
    out.tree.parent.push_back(-1);
    out.tree.children.emplace_back();
    for (size_t v = 0; v < out.tree.parent.size(); ++v) {
        int kids = rng.poisson(cfg.lambda);
        for (int c = 0; c < kids; ++c) {
            if (out.tree.size() >= cfg.max_nodes) {
                out.truncated = true;
                return out;
            }
            out.tree.children[v].push_back(out.tree.size());
            out.tree.parent.push_back(int(v));
            out.tree.children.emplace_back();
        }
    }
    return out;
}

}  // namespace mulab
