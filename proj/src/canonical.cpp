#include "mulab/canonical.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <cstring>

#include "mulab/errors.hpp"

namespace mulab {

namespace {

// Tiny union-find for orbit pruning (<= 64 elements).
struct Orbits {
    std::array<int8_t, 64> parent;
    void init(int n) {
        for (int i = 0; i < n; ++i) parent[i] = int8_t(i);
    }
    int find(int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[b] = int8_t(a);
    }
};

}  // namespace

void Canonicalizer::load(int n, const uint64_t* rows, const std::vector<int>* colours) {
    n_ = n;
    if (n_ > 64) throw CapExceeded("canonical labelling supports at most 64 vertices");
    for (int v = 0; v < n_; ++v) adj_[v] = rows[v];

    if (int(level_.size()) < n_ + 1) level_.resize(n_ + 1);
    path_.clear();
    generators_.clear();
    have_best_ = false;
    best_.clear();

    prefix_.clear();
    prefix_.push_back(char(n_));

    Part& p = level_[0];
    std::array<int8_t, 64> vs;
    for (int i = 0; i < n_; ++i) vs[i] = int8_t(i);
    if (colours) {
        assert(int(colours->size()) == n_);
        std::sort(vs.begin(), vs.begin() + n_, [&](int8_t a, int8_t b) {
            int ca = (*colours)[a], cb = (*colours)[b];
            return ca < cb || (ca == cb && a < b);
        });
    }
    p.cells = 0;
    int i = 0;
    while (i < n_) {
        int j = i;
        while (j < n_ && (!colours || (*colours)[vs[j]] == (*colours)[vs[i]])) ++j;
        for (int t = i; t < j; ++t) {
            p.order[t] = vs[t];
            p.cell_start[t] = int8_t(i);
        }
        p.cell_len[i] = int8_t(j - i);
        if (colours) prefix_.push_back(char(j - i));
        ++p.cells;
        i = j;
    }
}

void Canonicalizer::refine(Part& p) {
    if (p.cells == n_) return;
    std::array<int8_t, 64> starts;
    std::array<uint64_t, 64> cmask;
    std::array<std::array<int8_t, 64>, 64> sig;

    bool changed = true;
    while (changed && p.cells < n_) {
        changed = false;
        int nc = 0;
        for (int i = 0; i < n_;) {
            starts[nc] = int8_t(i);
            uint64_t m = 0;
            int len = p.cell_len[i];
            for (int t = i; t < i + len; ++t) m |= uint64_t(1) << p.order[t];
            cmask[nc++] = m;
            i += len;
        }
        for (int ci = 0; ci < nc; ++ci) {
            int s = starts[ci];
            int len = p.cell_len[s];
            if (len < 2) continue;
            for (int t = 0; t < len; ++t) {
                uint64_t row = adj_[p.order[s + t]];
                for (int c = 0; c < nc; ++c)
                    sig[t][c] = int8_t(std::popcount(row & cmask[c]));
            }
            std::array<int8_t, 64> idx;
            for (int t = 0; t < len; ++t) idx[t] = int8_t(t);
            std::sort(idx.begin(), idx.begin() + len, [&](int8_t a, int8_t b) {
                int cmp = std::memcmp(sig[a].data(), sig[b].data(), size_t(nc));
                if (cmp != 0) return cmp < 0;
                return p.order[s + a] < p.order[s + b];
            });
            std::array<int8_t, 64> reordered;
            for (int t = 0; t < len; ++t) reordered[t] = p.order[s + idx[t]];
            // Split at every signature boundary.
            int sub = 0;
            for (int t = 1; t <= len; ++t) {
                bool boundary =
                    t == len ||
                    std::memcmp(sig[idx[t]].data(), sig[idx[t - 1]].data(), size_t(nc)) != 0;
                if (!boundary) continue;
                for (int q = sub; q < t; ++q) {
                    p.order[s + q] = reordered[q];
                    p.cell_start[s + q] = int8_t(s + sub);
                }
                p.cell_len[s + sub] = int8_t(t - sub);
                if (sub != 0) {
                    ++p.cells;
                    changed = true;
                }
                sub = t;
            }
        }
    }
}

int Canonicalizer::target_cell(const Part& p) const {
    int best = -1, best_len = 65;
    for (int i = 0; i < n_;) {
        int len = p.cell_len[i];
        if (len >= 2 && len < best_len) {
            best = i;
            best_len = len;
        }
        i += len;
    }
    return best;
}

void Canonicalizer::individualize(Part& p, int v) {
    int pv = -1;
    for (int i = 0; i < n_; ++i)
        if (p.order[i] == v) {
            pv = i;
            break;
        }
    assert(pv >= 0);
    int s = p.cell_start[pv];
    int len = p.cell_len[s];
    assert(len >= 2);
    std::swap(p.order[pv], p.order[s]);
    p.cell_start[s] = int8_t(s);
    p.cell_len[s] = 1;
    for (int t = s + 1; t < s + len; ++t) p.cell_start[t] = int8_t(s + 1);
    p.cell_len[s + 1] = int8_t(len - 1);
    ++p.cells;
}

void Canonicalizer::handle_leaf(const Part& p) {
    int nbits = n_ * (n_ - 1) / 2;
    enc_.assign(size_t((nbits + 7) / 8), '\0');
    int bit = 0;
    for (int i = 0; i < n_; ++i) {
        uint64_t row = adj_[p.order[i]];
        for (int j = i + 1; j < n_; ++j, ++bit)
            if ((row >> p.order[j]) & 1)
                enc_[size_t(bit >> 3)] |= char(0x80u >> (bit & 7));
    }
    if (!have_best_ || enc_ < best_) {
        best_ = enc_;
        best_order_ = p.order;
        have_best_ = true;
        return;
    }
    if (enc_ != best_) return;
    // Two labellings with the same image: their composition is an
    // automorphism; record it for orbit pruning.
    std::array<int8_t, 64> sigma;
    bool identity = true;
    for (int i = 0; i < n_; ++i) {
        sigma[best_order_[i]] = p.order[i];
        if (best_order_[i] != p.order[i]) identity = false;
    }
    if (identity) return;
    for (const auto& g : generators_)
        if (std::memcmp(g.data(), sigma.data(), size_t(n_)) == 0) return;
    generators_.push_back(sigma);
}

void Canonicalizer::search(int depth) {
    Part& p = level_[depth];
    refine(p);
    if (p.cells == n_) {
        handle_leaf(p);
        return;
    }
    int ts = target_cell(p);
    int len = p.cell_len[ts];
    std::array<int8_t, 64> cand;
    for (int t = 0; t < len; ++t) cand[t] = p.order[ts + t];
    std::sort(cand.begin(), cand.begin() + len);

    std::array<int8_t, 64> explored;
    int ne = 0;
    Orbits uf;
    for (int t = 0; t < len; ++t) {
        int v = cand[t];
        if (ne > 0 && !generators_.empty()) {
            uf.init(n_);
            for (const auto& gen : generators_) {
                bool fixes = true;
                for (int8_t w : path_)
                    if (gen[w] != w) {
                        fixes = false;
                        break;
                    }
                if (!fixes) continue;
                for (int u = 0; u < n_; ++u) uf.unite(u, gen[u]);
            }
            bool skip = false;
            for (int e = 0; e < ne; ++e)
                if (uf.find(explored[e]) == uf.find(v)) {
                    skip = true;
                    break;
                }
            if (skip) continue;
        }
        path_.push_back(int8_t(v));
        level_[depth + 1] = p;
        individualize(level_[depth + 1], v);
        search(depth + 1);
        path_.pop_back();
        explored[ne++] = int8_t(v);
    }
}

const std::string& Canonicalizer::finish() {
    result_.assign(prefix_);
    result_.append(best_);
    return result_;
}

const std::string& Canonicalizer::run_rows(int n, const uint64_t* rows) {
    load(n, rows, nullptr);
    if (n_ <= 1) {
        best_.clear();
        return finish();
    }
    // Complete and empty graphs are the worst case for the search and the
    // most common hot inputs (every subset of a clique is a clique), so
    // write their certificates directly.
    uint64_t full = n_ == 64 ? ~uint64_t(0) : (uint64_t(1) << n_) - 1;
    bool empty = true, complete = true;
    for (int v = 0; v < n_ && (empty || complete); ++v) {
        if (adj_[v] != 0) empty = false;
        if (adj_[v] != (full ^ (uint64_t(1) << v))) complete = false;
    }
    if (empty || complete) {
        int nbits = n_ * (n_ - 1) / 2;
        best_.assign(size_t((nbits + 7) / 8), empty ? '\0' : '\xff');
        if (complete && nbits % 8 != 0)
            best_.back() = char(0xffu << (8 - nbits % 8));
        return finish();
    }
    search(0);
    return finish();
}

const std::string& Canonicalizer::run(const Graph& g) {
    int n = g.vertex_count();
    if (n > 64) throw CapExceeded("canonical labelling supports at most 64 vertices");
    std::array<uint64_t, 64> rows{};
    for (int v = 0; v < n; ++v) rows[v] = g.row64(v);
    return run_rows(n, rows.data());
}

const std::string& Canonicalizer::run_coloured(const Graph& g, const std::vector<int>& colours) {
    int n = g.vertex_count();
    if (n > 64) throw CapExceeded("canonical labelling supports at most 64 vertices");
    std::array<uint64_t, 64> rows{};
    for (int v = 0; v < n; ++v) rows[v] = g.row64(v);
    load(n, rows.data(), &colours);
    if (n_ <= 1) {
        best_.clear();
        return finish();
    }
    search(0);
    return finish();
}

std::vector<std::vector<int>> Canonicalizer::refined_cells(const Graph& g,
                                                           const std::vector<int>& colours) {
    int n = g.vertex_count();
    if (n > 64) throw CapExceeded("canonical labelling supports at most 64 vertices");
    std::array<uint64_t, 64> rows{};
    for (int v = 0; v < n; ++v) rows[v] = g.row64(v);
    load(n, rows.data(), &colours);
    refine(level_[0]);
    const Part& p = level_[0];
    std::vector<std::vector<int>> cells;
    for (int i = 0; i < n_;) {
        int len = p.cell_len[i];
        std::vector<int> cell(p.order.begin() + i, p.order.begin() + i + len);
        std::sort(cell.begin(), cell.end());
        cells.push_back(std::move(cell));
        i += len;
    }
    return cells;
}

CanonicalForm canonical_form(const Graph& g, int cap) {
    if (g.vertex_count() > cap)
        throw CapExceeded("canonical_form: graph exceeds size cap");
    Canonicalizer canon;
    return CanonicalForm{canon.run(g)};
}

bool are_isomorphic(const Graph& a, const Graph& b, int cap) {
    if (a.vertex_count() > cap || b.vertex_count() > cap)
        throw CapExceeded("are_isomorphic: graph exceeds size cap");
    if (a.vertex_count() != b.vertex_count()) return false;
    if (a.edge_count() != b.edge_count()) return false;
    Canonicalizer canon;
    // run() reuses one internal buffer, so the first certificate must be
    // copied out before the second call overwrites it
    std::string cert_a = canon.run(a);
    return cert_a == canon.run(b);
}

uint64_t automorphism_count(const Graph& g, int cap) {
    int n = g.vertex_count();
    if (n > cap) throw CapExceeded("automorphism_count: graph exceeds size cap");
    if (n <= 1) return 1;

    // Orbit-stabilizer chain: pick a vertex v in the first smallest
    // non-singleton refinement cell, count its orbit by comparing
    // certificates with each candidate individualized, then fix v and
    // recurse.  |Aut| is the product of the orbit sizes.
    Canonicalizer canon;
    std::vector<int> colours(n, 0);
    uint64_t total = 1;
    for (int level = 1;; ++level) {
        auto cells = canon.refined_cells(g, colours);
        int pick = -1;
        for (int i = 0; i < int(cells.size()); ++i)
            if (cells[i].size() >= 2 &&
                (pick == -1 || cells[i].size() < cells[pick].size()))
                pick = i;
        if (pick == -1) return total;
        const auto& cell = cells[pick];
        int v = cell[0];
        int old = colours[v];
        colours[v] = level;
        std::string ref = canon.run_coloured(g, colours);
        colours[v] = old;
        uint64_t orbit = 1;
        for (size_t i = 1; i < cell.size(); ++i) {
            int u = cell[i];
            colours[u] = level;
            if (canon.run_coloured(g, colours) == ref) ++orbit;
            colours[u] = old;
        }
        colours[v] = level;
        total *= orbit;
    }
}

}  // namespace mulab
