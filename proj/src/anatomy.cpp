#include "mulab/anatomy.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <deque>
#include <mutex>

#include "mulab/errors.hpp"
#include "mulab/parallel.hpp"
#include "mulab/random_models.hpp"

namespace mulab {

namespace {

bool is_induced_path(const Graph& g, const std::vector<int>& path) {
    for (size_t i = 0; i < path.size(); ++i)
        for (size_t j = i + 1; j < path.size(); ++j)
            if (g.has_edge(path[i], path[j]) != (j == i + 1)) return false;
    return true;
}

}  // namespace

CoreDecomposition core_decompose(const Graph& g) {
    int n = g.vertex_count();
    CoreDecomposition dec;
    dec.core_vertices = VertexSet(n);
    dec.component_labels.assign(n, -1);

    int comps = 0;
    std::vector<int> order;
    for (int s = 0; s < n; ++s) {
        if (dec.component_labels[s] >= 0) continue;
        dec.component_labels[s] = comps;
        order.assign(1, s);
        for (size_t qi = 0; qi < order.size(); ++qi)
            for_each_neighbor(g, order[qi], [&](int u) {
                if (dec.component_labels[u] >= 0) return;
                dec.component_labels[u] = comps;
                order.push_back(u);
            });
        ++comps;
    }

    // a component is complex when it carries at least two independent
    // cycles, i.e. strictly more edges than a unicyclic graph
    std::vector<long long> comp_size(comps, 0), comp_degsum(comps, 0);
    for (int v = 0; v < n; ++v) {
        ++comp_size[dec.component_labels[v]];
        comp_degsum[dec.component_labels[v]] += g.degree(v);
    }
    dec.complex_flags.assign(comps, 0);
    for (int c = 0; c < comps; ++c)
        if (comp_degsum[c] / 2 >= comp_size[c] + 1) dec.complex_flags[c] = 1;

    // peel degree-<=1 vertices inside complex components down to the 2-core
    std::vector<int> deg(n, 0);
    std::vector<uint8_t> in_complex(n, 0), removed(n, 0);
    std::vector<int> peel;
    for (int v = 0; v < n; ++v) {
        if (!dec.complex_flags[dec.component_labels[v]]) continue;
        in_complex[v] = 1;
        deg[v] = g.degree(v);
        if (deg[v] <= 1) {
            removed[v] = 1;
            peel.push_back(v);
        }
    }
    for (size_t i = 0; i < peel.size(); ++i)
        for_each_neighbor(g, peel[i], [&](int u) {
            if (!in_complex[u] || removed[u]) return;
            if (--deg[u] <= 1) {
                removed[u] = 1;
                peel.push_back(u);
            }
        });
    for (int v = 0; v < n; ++v)
        if (in_complex[v] && !removed[v]) dec.core_vertices.add(v);

    // each peeled vertex hangs from exactly one core vertex: a peeled tree
    // touching the core twice would contain a core-to-core path whose
    // interior never drops below degree 2
    std::vector<uint8_t> claimed(n, 0);
    for (int v : dec.core_vertices.to_vector()) {
        RootedTree t;
        t.parent.assign(1, -1);
        t.children.assign(1, {});
        std::vector<int> labels{v};
        for (size_t qi = 0; qi < labels.size(); ++qi)
            for_each_neighbor(g, labels[qi], [&](int u) {
                if (!removed[u] || claimed[u]) return;
                claimed[u] = 1;
                t.parent.push_back(int(qi));
                t.children.emplace_back();
                t.children[qi].push_back(int(labels.size()));
                labels.push_back(u);
            });
        dec.pendant.emplace(v, std::move(t));
        dec.pendant_labels.emplace(v, std::move(labels));
    }
    return dec;
}

TypeTuple type_tuple(const Graph&, const CoreDecomposition& dec) {
    TypeTuple t;
    t.codes.reserve(dec.pendant.size());
    for (const auto& [v, tree] : dec.pendant) t.codes.push_back(ahu_code(tree));
    return t;
}

double conjugate_lambda(double lambda) {
    if (!(lambda > 1.0)) throw DomainError("conjugate_lambda: need lambda > 1");
    double target = lambda * std::exp(-lambda);
    // x*exp(-x) increases from 0 to 1/e on (0,1), so the bracket is valid
    // and bisection lands within one ulp; the residual is far below 1e-12
    double lo = 0.0, hi = 1.0;
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        if (mid * std::exp(-mid) < target)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

ContiguousModel build_contiguous_model(const Graph& core, double lambda_prime, Seed seed) {
    if (!(lambda_prime > 0.0 && lambda_prime < 1.0))
        throw DomainError("build_contiguous_model: lambda_prime must lie in (0,1)");
    int n = core.vertex_count();
    GwConfig cfg;
    cfg.lambda = lambda_prime;
    std::vector<RootedTree> trees(n);
    ContiguousModel out;
    long long total = n;
    for (int v = 0; v < n; ++v) {
        GwSample s = sample_gw_tree(cfg, seed.sub(uint64_t(v)));
        out.truncated = out.truncated || s.truncated;
        total += s.tree.size() - 1;
        trees[v] = std::move(s.tree);
    }
    out.graph = Graph(int(total));
    for (int u = 0; u < n; ++u)
        for_each_neighbor(core, u, [&](int w) {
            if (u < w) out.graph.add_edge(u, w);
        });
    int next = n;
    for (int v = 0; v < n; ++v) {
        const RootedTree& t = trees[v];
        // node 0 is the core vertex itself, deeper nodes get fresh labels
        std::vector<int> label(t.size());
        label[0] = v;
        for (int i = 1; i < t.size(); ++i) label[i] = next++;
        for (int i = 1; i < t.size(); ++i) out.graph.add_edge(label[i], label[t.parent[i]]);
    }
    return out;
}

XiStats xi_stats(const Graph& g, double p, int workers) {
    int n = g.vertex_count();
    if (n < 2) throw DomainError("xi_stats: need at least two vertices");
    double q = 1.0 - 2.0 * p * (1.0 - p);
    XiStats out;
    out.alpha = n * q;
    out.beta = std::sqrt(8.0 * n * p * (1.0 - p) * q * std::log(double(n)));
    out.histogram.assign(size_t(n - 1), 0);
    out.xi_max = -1;

    int words = g.words_per_row();
    // the complement of a row turns the padding bits on; mask them away
    uint64_t tail = (n & 63) ? ((uint64_t(1) << (n & 63)) - 1) : ~uint64_t(0);
    std::mutex merge;
    parallel_for_index(n - 1, workers, [&](int x) {
        std::vector<long long> hist(size_t(n - 1), 0);
        int row_max = -1, row_arg = -1;
        const uint64_t* rx = g.row(x);
        for (int y = x + 1; y < n; ++y) {
            const uint64_t* ry = g.row(y);
            int xi = 0;
            for (int w = 0; w < words; ++w) {
                uint64_t common = (rx[w] & ry[w]) | (~rx[w] & ~ry[w]);
                if (w == words - 1) common &= tail;
                xi += __builtin_popcountll(common);
            }
            // x and y themselves show up as "adjacent to neither" exactly
            // when they are not adjacent to each other
            if (!g.has_edge(x, y)) xi -= 2;
            ++hist[size_t(xi)];
            if (xi > row_max) {
                row_max = xi;
                row_arg = y;
            }
        }
        std::lock_guard<std::mutex> lock(merge);
        for (int k = 0; k < n - 1; ++k) out.histogram[k] += hist[k];
        if (row_max > out.xi_max ||
            (row_max == out.xi_max && std::pair(x, row_arg) < out.argmax_pair)) {
            out.xi_max = row_max;
            out.argmax_pair = {x, row_arg};
        }
    });
    return out;
}

std::vector<int> find_induced_path(const Graph& g, int tries, Seed seed) {
    int n = g.vertex_count();
    std::vector<int> best;
    if (n == 0) return best;
    std::vector<int> on_path_nbrs(n);
    std::vector<uint8_t> on_path(n);
    std::vector<int> cand;
    for (int t = 0; t < tries; ++t) {
        Rng rng(seed.sub(uint64_t(t)));
        std::fill(on_path_nbrs.begin(), on_path_nbrs.end(), 0);
        std::fill(on_path.begin(), on_path.end(), 0);
        std::deque<int> path;
        auto add = [&](int v, bool front) {
            if (front)
                path.push_front(v);
            else
                path.push_back(v);
            on_path[v] = 1;
            for_each_neighbor(g, v, [&](int u) { ++on_path_nbrs[u]; });
        };
        add(int(rng.next_below(uint64_t(n))), false);
        // grow the tail, then the head; a vertex may join an end only if
        // that end is its single neighbour on the path, which keeps the
        // path induced by construction.  Among the eligible vertices,
        // prefer those with the most neighbours left off the path (dead
        // ends like pendant vertices would stop growth immediately), and
        // break ties at random.
        for (int side = 0; side < 2; ++side) {
            while (true) {
                int end = side == 0 ? path.back() : path.front();
                cand.clear();
                int best_room = -1;
                for_each_neighbor(g, end, [&](int u) {
                    if (on_path[u] || on_path_nbrs[u] != 1) return;
                    int room = g.degree(u) - on_path_nbrs[u];
                    if (room > best_room) {
                        best_room = room;
                        cand.clear();
                    }
                    if (room == best_room) cand.push_back(u);
                });
                if (cand.empty()) break;
                add(cand[rng.next_below(cand.size())], side == 1);
            }
        }
        if (path.size() > best.size()) best.assign(path.begin(), path.end());
    }
    assert(is_induced_path(g, best));
    return best;
}

CombResult extract_comb(const Graph& g, const std::vector<int>& path) {
    if (path.empty() || !is_induced_path(g, path))
        throw PathNotInduced("extract_comb: vertex sequence is not an induced path");
    int n = g.vertex_count();
    int len = int(path.size());
    std::vector<uint8_t> on_path(n, 0), picked(n, 0);
    for (int v : path) on_path[v] = 1;

    // smallest off-path neighbour per path vertex, for determinism
    std::vector<int> pick(len, -1);
    std::vector<int> times(n, 0);
    for (int i = 0; i < len; ++i) {
        const uint64_t* row = g.row(path[i]);
        for (int w = 0; w < g.words_per_row() && pick[i] < 0; ++w)
            for (uint64_t bits = row[w]; bits; bits &= bits - 1) {
                int u = (w << 6) + __builtin_ctzll(bits);
                if (!on_path[u]) {
                    pick[i] = u;
                    break;
                }
            }
        if (pick[i] < 0)
            throw DegreeTooLow("extract_comb: path vertex " + std::to_string(path[i]) +
                               " has no neighbour off the path");
        picked[pick[i]] = 1;
        ++times[pick[i]];
    }

    std::vector<int> u_star;
    std::vector<uint8_t> kept(n, 0);
    for (int i = 0; i < len; ++i) {
        int u = pick[i];
        if (times[u] != 1 || kept[u]) continue;
        int inside = 0;
        for_each_neighbor(g, u, [&](int w) {
            if (on_path[w] || picked[w]) ++inside;
        });
        if (inside != 1) continue;
        // teeth must keep clear of both path ends so that end-leaves stay
        // distinguishable from teeth in the comb
        bool touches_end = false;
        for (int e : {0, 1, len - 2, len - 1})
            if (e >= 0 && e < len && g.has_edge(u, path[e])) touches_end = true;
        if (touches_end) continue;
        kept[u] = 1;
        u_star.push_back(u);
    }
    std::sort(u_star.begin(), u_star.end());

    VertexSet keep(n);
    for (int v : path) keep.add(v);
    for (int u : u_star) keep.add(u);
    CombResult out;
    out.comb = induced_subgraph(g, keep);
    out.u_star = std::move(u_star);
    out.u_star_size = int(out.u_star.size());
    return out;
}

double second_eigenvalue(const Graph& g, int iterations, int* iterations_used) {
    int n = g.vertex_count();
    if (n < 2) throw DomainError("second_eigenvalue: need at least two vertices");
    int d = g.degree(0);
    for (int v = 1; v < n; ++v)
        if (g.degree(v) != d) throw NotRegular("second_eigenvalue: graph is not regular");

    // fixed arbitrary start vector; the all-ones direction (the trivial
    // eigenvector of a regular graph) is projected out after every step
    Rng rng(Seed{0x5eed5eed5eed5eedULL, 17});
    std::vector<double> v(n), w(n);
    for (double& x : v) x = rng.next_double() - 0.5;
    auto deflate_normalize = [n](std::vector<double>& z) {
        double mean = 0.0;
        for (double x : z) mean += x;
        mean /= n;
        double norm = 0.0;
        for (double& x : z) {
            x -= mean;
            norm += x * x;
        }
        norm = std::sqrt(norm);
        if (norm > 0.0)
            for (double& x : z) x /= norm;
        return norm;
    };
    deflate_normalize(v);

    // with v unit length, |A v| converges to the largest non-trivial
    // absolute eigenvalue at rate (second ratio)^iterations
    double est = 0.0;
    int used = 0;
    while (used < iterations) {
        for (int i = 0; i < n; ++i) {
            double s = 0.0;
            for_each_neighbor(g, i, [&](int j) { s += v[j]; });
            w[i] = s;
        }
        double next = deflate_normalize(w);
        std::swap(v, w);
        ++used;
        bool settled = std::abs(next - est) <= 1e-8;
        est = next;
        if (settled) break;
    }
    if (iterations_used) *iterations_used = used;
    return est;
}

std::string decomposition_to_text(const Graph& g, const CoreDecomposition& dec) {
    std::vector<int> core = dec.core_vertices.to_vector();
    std::string out = "core " + std::to_string(core.size()) + "\n";
    for (size_t i = 0; i < core.size(); ++i) {
        out += i ? " " : "";
        out += std::to_string(core[i]);
    }
    if (!core.empty()) out += "\n";
    std::string edges;
    long long m = 0;
    for (int u : core)
        for_each_neighbor(g, u, [&](int v) {
            if (u < v && dec.core_vertices.contains(v)) {
                edges += std::to_string(u) + " " + std::to_string(v) + "\n";
                ++m;
            }
        });
    out += "edges " + std::to_string(m) + "\n" + edges;
    out += "types\n";
    for (const auto& [v, tree] : dec.pendant) out += std::to_string(v) + " " + ahu_code(tree) + "\n";
    return out;
}

std::string type_tuple_to_text(const TypeTuple& t) {
    std::string out;
    for (const AhuCode& c : t.codes) out += c + "\n";
    return out;
}

}  // namespace mulab
