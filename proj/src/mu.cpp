#include "mulab/mu.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "mulab/anatomy.hpp"
#include "mulab/canonical.hpp"
#include "mulab/errors.hpp"
#include "mulab/format.hpp"
#include "mulab/parallel.hpp"
#include "mulab/random_models.hpp"
#include "mulab/rooted_tree.hpp"
#include "mulab/subtree_count.hpp"

namespace mulab {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

constexpr double kInf = std::numeric_limits<double>::infinity();

// Upper bound on log2 |Aut(g)| at any size: automorphisms permute vertices
// only within the cells of the stable colour refinement, so |Aut| divides
// the product of cell factorials.
double refinement_aut_log2(const Graph& g) {
    int n = g.vertex_count();
    if (n == 0) return 0.0;
    std::vector<int> colour(n, 0), next(n), sig;
    int classes = 1;
    for (int round = 0; round < n; ++round) {
        std::map<std::pair<int, std::vector<int>>, int> ids;
        for (int v = 0; v < n; ++v) {
            sig.clear();
            for_each_neighbor(g, v, [&](int u) { sig.push_back(colour[u]); });
            std::sort(sig.begin(), sig.end());
            auto it = ids.try_emplace({colour[v], sig}, int(ids.size())).first;
            next[v] = it->second;
        }
        colour.swap(next);
        if (int(ids.size()) == classes) break;
        classes = int(ids.size());
    }
    std::vector<long long> cell(classes, 0);
    for (int v = 0; v < n; ++v) ++cell[colour[v]];
    double s = 0.0;
    for (long long c : cell) s += std::lgamma(double(c) + 1.0);
    return s / std::log(2.0);
}

}  // namespace

double MuReport::best_lower() const {
    double best = -kInf;
    for (const auto& [tag, v] : lower_bounds) best = std::max(best, v);
    return best;
}

double MuReport::best_upper() const {
    double best = kInf;
    for (const auto& [tag, v] : upper_bounds) best = std::min(best, v);
    return best;
}

void MuReport::validate() const {
    constexpr double kSlack = 1e-9;
    if (best_lower() > best_upper() + kSlack)
        throw DomainError("mu report: a lower bound exceeds an upper bound");
    if (exact) {
        double ex = log2_big(*exact);
        if (best_lower() > ex + kSlack || ex > best_upper() + kSlack)
            throw DomainError("mu report: exact value escapes the bounds");
    }
}

std::string mu_report_to_line(const MuReport& r) {
    std::string out = "exact=";
    out += r.exact ? r.exact->str() : std::string("-");
    out += ";subsets=" + std::to_string(r.subsets_enumerated);
    out += ";elapsed=" + fixed_double(r.elapsed, 3);
    out += ";lower:";
    for (size_t i = 0; i < r.lower_bounds.size(); ++i) {
        if (i) out += ",";
        out += r.lower_bounds[i].first + "=" + fixed_double(r.lower_bounds[i].second, 6);
    }
    out += ";upper:";
    for (size_t i = 0; i < r.upper_bounds.size(); ++i) {
        if (i) out += ",";
        out += r.upper_bounds[i].first + "=" + fixed_double(r.upper_bounds[i].second, 6);
    }
    out += ";notes:";
    for (size_t i = 0; i < r.notes.size(); ++i) {
        if (i) out += ",";
        out += r.notes[i].first + "=" + r.notes[i].second;
    }
    return out;
}

MuReport mu_exact(const Graph& g, int workers, int cap) {
    auto t0 = std::chrono::steady_clock::now();
    int n = g.vertex_count();
    if (n > cap || n > 62)
        throw CapExceeded("mu_exact: " + std::to_string(n) + " vertices exceeds the cap of " +
                          std::to_string(std::min(cap, 62)));
    uint64_t total = uint64_t(1) << n;
    int blocks = std::max(1, workers);
    if (uint64_t(blocks) > total) blocks = int(total);

    std::vector<uint64_t> rows(n);
    for (int v = 0; v < n; ++v) rows[v] = g.row64(v);

    std::vector<std::unordered_set<std::string>> local(blocks);
    parallel_for_index(blocks, blocks, [&](int b) {
        uint64_t chunk = total / blocks, extra = total % blocks;
        uint64_t lo = uint64_t(b) * chunk + std::min<uint64_t>(b, extra);
        uint64_t hi = lo + chunk + (uint64_t(b) < extra ? 1 : 0);
        Canonicalizer canon;
        std::unordered_set<std::string>& out = local[b];
        int verts[64];
        uint64_t sub[64];
        for (uint64_t m = lo; m < hi; ++m) {
            int k = 0;
            for (uint64_t x = m; x; x &= x - 1) verts[k++] = __builtin_ctzll(x);
            for (int i = 0; i < k; ++i) {
                uint64_t packed = 0, r = rows[verts[i]];
                for (int j = 0; j < k; ++j) packed |= ((r >> verts[j]) & 1u) << j;
                sub[i] = packed;
            }
            out.insert(canon.run_rows(k, sub));
        }
    });
    std::unordered_set<std::string> merged = std::move(local[0]);
    for (int b = 1; b < blocks; ++b)
        merged.insert(std::make_move_iterator(local[b].begin()),
                      std::make_move_iterator(local[b].end()));

    MuReport rep;
    rep.exact = BigInt(merged.size());
    rep.subsets_enumerated = total;
    rep.elapsed = seconds_since(t0);
    rep.validate();
    return rep;
}

namespace {

struct SubsetGraph {
    int k = 0;
    int edges = 0;
    std::array<uint16_t, kMuNaiveCap> rows{};
    std::array<uint8_t, kMuNaiveCap> degs{};  // sorted ascending
};

bool brute_isomorphic(const SubsetGraph& a, const SubsetGraph& b) {
    if (a.edges != b.edges || a.degs != b.degs) return false;
    int k = a.k;
    std::array<int, kMuNaiveCap> perm{};
    std::iota(perm.begin(), perm.begin() + k, 0);
    do {
        bool ok = true;
        for (int i = 0; i < k && ok; ++i)
            for (int j = i + 1; j < k; ++j)
                if (((a.rows[i] >> j) & 1) != ((b.rows[perm[i]] >> perm[j]) & 1)) {
                    ok = false;
                    break;
                }
        if (ok) return true;
    } while (std::next_permutation(perm.begin(), perm.begin() + k));
    return false;
}

}  // namespace

BigInt mu_oracle_naive(const Graph& g) {
    int n = g.vertex_count();
    if (n > kMuNaiveCap)
        throw CapExceeded("mu_oracle_naive: supports at most " + std::to_string(kMuNaiveCap) +
                          " vertices");
    std::vector<std::vector<SubsetGraph>> reps(size_t(n) + 1);
    int verts[kMuNaiveCap];
    for (uint32_t m = 0; m < (uint32_t(1) << n); ++m) {
        SubsetGraph s;
        for (uint32_t x = m; x; x &= x - 1) verts[s.k++] = int(__builtin_ctz(x));
        for (int i = 0; i < s.k; ++i) {
            uint16_t row = 0;
            for (int j = 0; j < s.k; ++j)
                if (g.has_edge(verts[i], verts[j])) row |= uint16_t(1) << j;
            s.rows[i] = row;
            s.degs[i] = uint8_t(__builtin_popcount(row));
            s.edges += s.degs[i];
        }
        s.edges /= 2;
        std::sort(s.degs.begin(), s.degs.begin() + s.k);
        auto& bucket = reps[size_t(s.k)];
        bool known = false;
        for (const SubsetGraph& r : bucket)
            if (brute_isomorphic(s, r)) {
                known = true;
                break;
            }
        if (!known) bucket.push_back(s);
    }
    BigInt count = 0;
    for (const auto& bucket : reps) count += bucket.size();
    return count;
}

MuReport mu_sample_lower(const Graph& g, uint64_t samples, Seed seed, int cap) {
    auto t0 = std::chrono::steady_clock::now();
    int n = g.vertex_count();
    if (cap > 64) cap = 64;
    if (n > cap && cap < 1) throw CapExceeded("mu_sample_lower: cap must be positive");

    std::unordered_map<std::string, uint64_t> freq;
    Canonicalizer canon;
    uint64_t rejected = 0;
    for (uint64_t i = 0; i < samples; ++i) {
        VertexSet s = sample_subset(n, seed.sub(i));
        if (s.count() > cap) {
            ++rejected;
            continue;
        }
        ++freq[canon.run(induced_subgraph(g, s))];
    }
    uint64_t used = samples - rejected;

    MuReport rep;
    rep.subsets_enumerated = used;
    if (rejected)
        rep.notes.emplace_back("rejected", std::to_string(rejected) + " subsets above the size cap");
    if (used > 0) rep.lower_bounds.emplace_back("sample-distinct", std::log2(double(freq.size())));
    uint64_t colliding = 0;
    for (const auto& [cert, c] : freq) colliding += c * (c - 1) / 2;
    uint64_t pairs = used * (used - 1) / 2;
    if (pairs > 0 && colliding > 0) {
        double phat = double(colliding) / double(pairs);
        rep.collision_freq = phat;
        rep.collision_freq_stderr = std::sqrt(phat * (1.0 - phat) / double(pairs));
        rep.lower_bounds.emplace_back("sample-collision", std::log2(double(pairs) / double(colliding)));
    } else if (pairs > 0) {
        rep.notes.emplace_back("sample-collision", "no collisions observed");
    }
    rep.elapsed = seconds_since(t0);
    rep.validate();
    return rep;
}

MuReport mu_lower_certificates(const Graph& g, Seed seed, std::optional<double> p_hint,
                               int path_tries) {
    auto t0 = std::chrono::steady_clock::now();
    int n = g.vertex_count();
    MuReport rep;

    // distinct sub-multisets of tree components induce non-isomorphic
    // forests: multiplicity m of a type allows m+1 copy counts
    ComponentCensus cc = component_census(g);
    std::map<AhuCode, long long> tree_mult;
    for (int c = 0; c < cc.count(); ++c)
        if (cc.is_tree(c)) ++tree_mult[unrooted_tree_code(g, cc.members[c])];
    if (!tree_mult.empty()) {
        double v = 0.0;
        for (const auto& [code, mult] : tree_mult) v += std::log2(double(mult) + 1.0);
        rep.lower_bounds.emplace_back("tree-components", v);
    } else {
        rep.notes.emplace_back("tree-components", "no tree components");
    }

    // comb along the best induced path: subsets of interior teeth stay
    // pairwise non-isomorphic up to spine reflection
    bool dense = p_hint && *p_hint > 0.5;
    if (dense) {
        rep.notes.emplace_back("comb", "graph too dense for an induced-path comb");
    } else if (n < 6) {
        rep.notes.emplace_back("comb", "graph too small");
    } else {
        std::vector<int> path = find_induced_path(g, path_tries, seed);
        int teeth = 0;
        // an end vertex of a maximal induced path may have no neighbour
        // left off the path; trimming both ends keeps the path induced and
        // restores off-path picks
        for (int trim = 0; trim < 3 && path.size() >= 6; ++trim) {
            try {
                teeth = extract_comb(g, path).u_star_size;
                break;
            } catch (const DegreeTooLow&) {
                path.erase(path.begin());
                path.pop_back();
            }
        }
        if (teeth >= 1)
            rep.lower_bounds.emplace_back("comb", double(teeth - 1));
        else
            rep.notes.emplace_back("comb", "no teeth along the best induced path");
    }

    // pendant-subtree tuples over the 2-core collide only via a core
    // automorphism
    CoreDecomposition dec = core_decompose(g);
    int core_size = dec.core_vertices.count();
    if (core_size > 0) {
        double sum = 0.0;
        for (const auto& [v, tree] : dec.pendant) sum += log2_big(count_subtrees_exact(tree).f);
        Graph core = induced_subgraph(g, dec.core_vertices);
        double aut_log2 = core_size <= kAutCap ? std::log2(double(automorphism_count(core)))
                                               : refinement_aut_log2(core);
        rep.lower_bounds.emplace_back("type-tuples", std::max(0.0, sum - aut_log2));
    } else {
        rep.notes.emplace_back("type-tuples", "no complex components, the 2-core is empty");
    }

    std::stable_sort(rep.lower_bounds.begin(), rep.lower_bounds.end(),
                     [](const auto& a, const auto& b) { return a.second > b.second; });
    rep.elapsed = seconds_since(t0);
    rep.validate();
    return rep;
}

namespace {

// Unlabelled connected classes on k vertices: trees and unicyclic graphs,
// exact for k <= 10, indexable by k.
constexpr long long kTreeClasses[11] = {0, 1, 1, 1, 2, 3, 6, 11, 23, 47, 106};
constexpr long long kUnicyclicClasses[11] = {0, 0, 0, 1, 2, 5, 13, 33, 89, 240, 657};

bool mask_connected(int k, const uint64_t* rows, uint64_t mask) {
    uint64_t seen = mask & (~mask + 1);
    for (;;) {
        uint64_t grow = seen;
        for (int i = 0; i < k; ++i)
            if ((seen >> i) & 1) grow |= rows[i] & mask;
        if (grow == seen) break;
        seen = grow;
    }
    return seen == mask;
}

}  // namespace

MuReport mu_upper_subcritical(const Graph& g, int t) {
    auto t0 = std::chrono::steady_clock::now();
    int n = g.vertex_count();
    if (t <= 0) t = n >= 3 ? std::max(1, int(std::ceil(2.0 * std::log(std::log(double(n)))))) : 1;

    ComponentCensus cc = component_census(g);
    long long u = 0;
    std::vector<std::set<std::string>> complex_classes(size_t(t) + 1);
    Canonicalizer canon;
    for (int c = 0; c < cc.count(); ++c) {
        int k = cc.sizes[c];
        bool complex = cc.edges[c] >= cc.sizes[c] + 1;
        // complex components too large to enumerate go to the 2^|U| side,
        // which covers all their subsets
        if (k > t || (complex && k > 20)) {
            u += k;
            continue;
        }
        if (!complex) continue;
        // census of the complex connected classes this component's induced
        // subgraphs can realize (trees and unicyclic ones are already
        // covered by the closed-form class counts)
        const std::vector<int>& mem = cc.members[c];
        std::vector<uint64_t> rows(size_t(k), 0);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j)
                if (g.has_edge(mem[i], mem[j])) rows[i] |= uint64_t(1) << j;
        uint64_t sub[24];
        for (uint64_t m = 1; m < (uint64_t(1) << k); ++m) {
            int kk = __builtin_popcountll(m);
            if (!mask_connected(k, rows.data(), m)) continue;
            int verts[24], kv = 0;
            long long edges = 0;
            for (uint64_t x = m; x; x &= x - 1) verts[kv++] = __builtin_ctzll(x);
            for (int i = 0; i < kv; ++i) {
                uint64_t packed = 0, r = rows[verts[i]];
                for (int j = 0; j < kv; ++j) packed |= ((r >> verts[j]) & 1u) << j;
                sub[i] = packed;
                edges += __builtin_popcountll(packed);
            }
            edges /= 2;
            if (edges < kk + 1) continue;
            complex_classes[size_t(kk)].insert(canon.run_rows(kv, sub));
        }
    }

    double bound = double(u);
    double per_class = std::log2(double(n) + 1.0);
    for (int k = 1; k <= t; ++k) {
        double nk;
        if (k <= 10)
            nk = double(kTreeClasses[k] + kUnicyclicClasses[k]);
        else
            nk = (double(k) + std::pow(double(k), 3)) * std::pow(4.0, k);
        nk += double(complex_classes[size_t(k)].size());
        bound += nk * per_class;
    }

    MuReport rep;
    rep.upper_bounds.emplace_back("subcritical-census", bound);
    rep.notes.emplace_back("threshold", std::to_string(t));
    rep.notes.emplace_back("large-component-vertices", std::to_string(u));
    rep.elapsed = seconds_since(t0);
    rep.validate();
    return rep;
}

EdgeConcentrationReport edge_concentration(const Graph& g, const VertexSet& u, int min_size,
                                           int trials, Seed seed, double p, bool regular_mode) {
    if (min_size < 2) throw DomainError("edge_concentration: min_size must be at least 2");
    int n = g.vertex_count();
    std::vector<int> uverts = u.to_vector();
    int m = int(uverts.size());
    double density = p;
    if (density < 0)
        density = n >= 2 ? 2.0 * double(g.edge_count()) / (double(n) * (n - 1)) : 0.0;
    double avg_deg = n > 0 ? 2.0 * double(g.edge_count()) / double(n) : 0.0;

    EdgeConcentrationReport rep;
    rep.min_ratio = kInf;
    rep.max_ratio = -kInf;
    rep.threshold_size = std::numeric_limits<int>::max();

    auto consider = [&](const VertexSet& w, int size) {
        long long e = 0;
        for (int wi = 0; wi < int(w.words().size()); ++wi) {
            uint64_t bits = w.words()[wi];
            while (bits) {
                int v = (wi << 6) + __builtin_ctzll(bits);
                bits &= bits - 1;
                const uint64_t* row = g.row(v);
                for (size_t ww = 0; ww < w.words().size(); ++ww)
                    e += __builtin_popcountll(row[ww] & w.words()[ww]);
            }
        }
        e /= 2;
        double denom = regular_mode ? avg_deg * double(size) * double(size) / (2.0 * n)
                                    : density * double(size) * (double(size) - 1.0) / 2.0;
        double ratio = denom > 0 ? double(e) / denom : (e == 0 ? 0.0 : kInf);
        rep.min_ratio = std::min(rep.min_ratio, ratio);
        rep.max_ratio = std::max(rep.max_ratio, ratio);
        rep.threshold_size = std::min(rep.threshold_size, size);
        ++rep.subsets_tested;
    };

    if (m <= 20) {
        for (uint32_t mask = 0; mask < (uint32_t(1) << m); ++mask) {
            int size = __builtin_popcount(mask);
            if (size < min_size) continue;
            VertexSet w(n);
            for (uint32_t x = mask; x; x &= x - 1) w.add(uverts[__builtin_ctz(x)]);
            consider(w, size);
        }
    } else {
        // a handful of redraws per trial absorbs the rare small subsets
        // without risking an unbounded loop
        for (int trial = 0; trial < trials; ++trial) {
            for (int attempt = 0; attempt < 64; ++attempt) {
                VertexSet pick = sample_subset(m, seed.sub(uint64_t(trial) * 64 + attempt));
                int size = pick.count();
                if (size < min_size) continue;
                VertexSet w(n);
                for (int i : pick.to_vector()) w.add(uverts[i]);
                consider(w, size);
                break;
            }
        }
    }
    if (rep.subsets_tested == 0) {
        rep.min_ratio = 0.0;
        rep.max_ratio = 0.0;
        rep.threshold_size = 0;
    }
    return rep;
}

double mckay_log_prob(int n, int d, const std::vector<int>& h_degrees, long long h_edges) {
    long long degsum = 0;
    for (int x : h_degrees) {
        if (x < 0 || x > d) throw DomainError("mckay_log_prob: a degree falls outside [0, d]");
        degsum += x;
    }
    if (degsum != 2 * h_edges)
        throw DomainError("mckay_log_prob: degree sum must equal twice the edge count");
    double half = double(d) * double(n) / 2.0;
    if (double(h_edges) > half)
        throw DomainError("mckay_log_prob: more edges than the host can hold");
    double out = 0.0;
    for (int x : h_degrees) out += std::lgamma(double(d) + 1.0) - std::lgamma(double(d - x) + 1.0);
    out -= double(h_edges) * std::log(2.0);
    out -= std::lgamma(half + 1.0) - std::lgamma(half - double(h_edges) + 1.0);
    return out;
}

}  // namespace mulab
