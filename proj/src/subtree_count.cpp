#include "mulab/subtree_count.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>
#include <utility>

#include "mulab/errors.hpp"
#include "mulab/parallel.hpp"

namespace mulab {

BigInt multichoose(const BigInt& options, int picks) {
    BigInt result = 1;
    for (int i = 1; i <= picks; ++i) {
        result *= options + (picks - i);
        result /= i;
    }
    return result;
}

namespace {

// Interned rooted-tree shapes: equal id <=> isomorphic as rooted trees.
// A shape stores its children grouped into classes of equal shape.
class ShapeTable {
  public:
    struct Shape {
        std::vector<std::pair<int, int>> classes;  // (child shape id, multiplicity)
        int total_children = 0;
    };

    int intern(std::vector<int> child_ids) {
        std::sort(child_ids.begin(), child_ids.end());
        Shape s;
        s.total_children = int(child_ids.size());
        for (size_t i = 0; i < child_ids.size();) {
            size_t j = i;
            while (j < child_ids.size() && child_ids[j] == child_ids[i]) ++j;
            s.classes.emplace_back(child_ids[i], int(j - i));
            i = j;
        }
        auto [it, fresh] = index_.emplace(s.classes, int(shapes_.size()));
        if (fresh) shapes_.push_back(std::move(s));
        return it->second;
    }

    const Shape& at(int id) const { return shapes_[id]; }

  private:
    std::map<std::vector<std::pair<int, int>>, int> index_;
    std::vector<Shape> shapes_;
};

// Counts rooted subtree shapes. A subtree of T containing the root is,
// up to isomorphism, a multiset M of nonempty shapes assigned injectively
// to the root's children, each child only hosting shapes embeddable into
// its own subtree. Children with different subtrees can still host equal
// shapes, so the count is NOT a per-child product: it is the number of
// multisets M for which such an assignment exists (Hall's condition over
// the children that can host each shape).
//
// common(ids) counts the nonempty shapes embeddable into every tree of a
// set at once; f(T) is the single-tree case. Sets are first reduced to
// their minimal trees under embeddability (a dominated tree's constraint
// is redundant), which keeps the recursion over meets shallow.
class SubtreeCounter {
  public:
    explicit SubtreeCounter(ShapeTable& table) : table_(table) {}

    const BigInt& count(int shape_id) { return lookup({shape_id}); }

    const BigInt& common(std::vector<int> ids) {
        std::sort(ids.begin(), ids.end());
        ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
        if (ids.size() > 1) {
            // drop every tree that another embeds into: its ideal is a
            // superset, so it never tightens the intersection
            std::vector<int> kept;
            for (size_t i = 0; i < ids.size(); ++i) {
                bool redundant = false;
                for (size_t j = 0; j < ids.size() && !redundant; ++j)
                    redundant = i != j && embeds(ids[j], ids[i]);
                if (!redundant) kept.push_back(ids[i]);
            }
            ids = std::move(kept);
        }
        return lookup(std::move(ids));
    }

    // does `small` embed into `big` as a root-preserving subtree?
    bool embeds(int small, int big) {
        if (small == big) return true;
        auto iv = ideal_memo_.find(big);
        if (iv != ideal_memo_.end())
            return std::binary_search(iv->second.begin(), iv->second.end(), small);
        uint64_t key = (uint64_t(uint32_t(small)) << 32) | uint32_t(big);
        auto it = embed_memo_.find(key);
        if (it != embed_memo_.end()) return it->second;
        const auto& s = table_.at(small);
        const auto& b = table_.at(big);
        bool ok = s.total_children <= b.total_children;
        if (ok) {
            // match s's children injectively into b's children, a child
            // hosting only shapes that embed into it (augmenting paths)
            std::vector<int> need, host;
            for (auto [c, m] : s.classes)
                for (int i = 0; i < m; ++i) need.push_back(c);
            for (auto [c, m] : b.classes)
                for (int i = 0; i < m; ++i) host.push_back(c);
            std::vector<int> owner(host.size(), -1);
            std::vector<char> seen;
            std::function<bool(int)> augment = [&](int u) -> bool {
                for (size_t v = 0; v < host.size(); ++v) {
                    if (seen[v] || !embeds(need[u], host[v])) continue;
                    seen[v] = 1;
                    if (owner[v] < 0 || augment(owner[v])) {
                        owner[v] = u;
                        return true;
                    }
                }
                return false;
            };
            for (size_t u = 0; u < need.size() && ok; ++u) {
                seen.assign(host.size(), 0);
                ok = augment(int(u));
            }
        }
        embed_memo_.emplace(key, ok);
        return ok;
    }

  private:
    // generation work allowed before a shape's ideal is left symbolic
    static constexpr int kGenerateCap = 4096;

    // ids must already be sorted, duplicate-free and mutually
    // non-embeddable; minimal elements of an up-set qualify directly
    const BigInt& lookup(std::vector<int> ids) {
        auto it = memo_.find(ids);
        if (it != memo_.end()) return it->second;
        BigInt value = common_uncached(ids);
        return memo_.emplace(std::move(ids), std::move(value)).first->second;
    }

    // Materialize the full list of shapes embeddable into sid when the
    // generation work stays below the cap, else record the refusal. Each
    // candidate is a per-class multiset of child-ideal members; interning
    // collapses the cross-class collisions that a plain product would
    // count twice.
    const std::vector<int>* try_ideal(int sid) {
        auto it = ideal_memo_.find(sid);
        if (it != ideal_memo_.end()) return &it->second;
        if (ideal_refused_.count(sid)) return nullptr;
        std::vector<std::pair<int, int>> classes = table_.at(sid).classes;
        BigInt work = 1;
        bool ok = true;
        for (auto [c, m] : classes) {
            work *= multichoose(lookup({c}) + 1, m);
            if (work > kGenerateCap) {
                ok = false;
                break;
            }
        }
        std::vector<const std::vector<int>*> opts;
        for (size_t k = 0; ok && k < classes.size(); ++k) {
            const std::vector<int>* iv = try_ideal(classes[k].first);
            if (iv)
                opts.push_back(iv);
            else
                ok = false;
        }
        if (!ok) {
            ideal_refused_.insert(sid);
            return nullptr;
        }
        std::set<int> out;
        std::vector<int> kids;
        std::function<void(size_t, size_t, int)> gen = [&](size_t k, size_t from, int left) {
            if (k == classes.size()) {
                out.insert(table_.intern(kids));
                return;
            }
            gen(k + 1, 0, k + 1 < classes.size() ? classes[k + 1].second : 0);
            if (left == 0) return;
            const auto& o = *opts[k];
            for (size_t i = from; i < o.size(); ++i) {
                kids.push_back(o[i]);
                gen(k, i, left - 1);
                kids.pop_back();
            }
        };
        gen(0, 0, classes.empty() ? 0 : classes[0].second);
        auto& slot = ideal_memo_[sid];
        slot.assign(out.begin(), out.end());
        return &slot;
    }

    BigInt common_uncached(const std::vector<int>& ids) {
        // a childless tree admits only the single-node shape
        for (int id : ids)
            if (table_.at(id).total_children == 0) return 1;

        // a star admits only smaller stars: count is bounded by the least
        // root degree, and every star up to that size embeds everywhere
        int min_children = table_.at(ids[0]).total_children;
        for (int id : ids)
            min_children = std::min(min_children, table_.at(id).total_children);
        for (int id : ids) {
            const auto& s = table_.at(id);
            if (s.classes.size() == 1 && table_.at(s.classes[0].first).total_children == 0)
                return min_children + 1;
        }

        // distinct child shapes across all trees in the set
        std::vector<int> d;
        for (int id : ids)
            for (auto [c, m] : table_.at(id).classes) d.push_back(c);
        std::sort(d.begin(), d.end());
        d.erase(std::unique(d.begin(), d.end()), d.end());
        int r = int(d.size());

        // all children share one shape: multisets from its ideal, size up
        // to the least child count, a single closed form
        if (r == 1) return multichoose(count(d[0]) + 1, min_children);

        // a materialized ideal turns the whole computation into a scan:
        // for one tree its size is the answer, for a set count the members
        // embeddable into all the other trees
        if (ids.size() == 1) {
            if (const std::vector<int>* iv = try_ideal(ids[0])) return BigInt(iv->size());
        } else {
            const std::vector<int>* best = nullptr;
            int host = -1;
            for (int id : ids) {
                if (lookup({id}) > kGenerateCap) continue;
                const std::vector<int>* iv = try_ideal(id);
                if (iv && (!best || iv->size() < best->size())) {
                    best = iv;
                    host = id;
                }
            }
            if (best) {
                BigInt hits = 0;
                for (int s : *best) {
                    bool all = true;
                    for (int id : ids)
                        if (id != host && !embeds(s, id)) {
                            all = false;
                            break;
                        }
                    if (all) ++hits;
                }
                return hits;
            }
        }

        // domination poset on the child shapes
        std::vector<uint32_t> above(r, 0);  // above[a]: strict dominators of a
        std::vector<uint32_t> below(r, 0);  // below[a]: strictly dominated by a
        for (int a = 0; a < r; ++a)
            for (int b = 0; b < r; ++b)
                if (a != b && embeds(d[a], d[b])) {
                    above[a] |= uint32_t(1) << b;
                    below[b] |= uint32_t(1) << a;
                }

        // A shape s usable inside M is classified by its signature: the set
        // of child shapes it embeds into. Signatures are upward closed in
        // the domination order, so enumerating up-sets covers all of them.
        // Order elements dominators-first so the DFS choice is legal.
        std::vector<int> order(r);
        {
            std::vector<char> placed(r, 0);
            for (int step = 0; step < r; ++step)
                for (int a = 0; a < r; ++a) {
                    if (placed[a]) continue;
                    bool ready = true;
                    for (int b = 0; b < r && ready; ++b)
                        if (!placed[b] && ((above[a] >> b) & 1u)) ready = false;
                    if (ready) {
                        order[step] = a;
                        placed[a] = 1;
                        break;
                    }
                }
        }
        std::vector<uint32_t> upsets;
        std::vector<std::pair<int, uint32_t>> dfs{{0, 0}};
        while (!dfs.empty()) {
            auto [i, mask] = dfs.back();
            dfs.pop_back();
            if (i == r) {
                if (mask) upsets.push_back(mask);
                continue;
            }
            dfs.emplace_back(i + 1, mask);
            int a = order[i];
            if ((above[a] & ~mask) == 0)
                dfs.emplace_back(i + 1, mask | (uint32_t(1) << a));
        }

        // size of the ideal cut out by an up-set: shapes embeddable into
        // all of its minimal elements (they carry the whole constraint and
        // are mutually non-embeddable, so no reduction pass is needed)
        std::unordered_map<uint32_t, const BigInt*> usize;
        usize.reserve(upsets.size() * 2);
        std::vector<int> mins;
        auto ideal_size = [&](uint32_t a) -> const BigInt& {
            auto it = usize.find(a);
            if (it != usize.end()) return *it->second;
            mins.clear();
            for (int x = 0; x < r; ++x)
                if (((a >> x) & 1u) && (below[x] & a) == 0) mins.push_back(d[x]);
            const BigInt& v = lookup(mins);
            usize.emplace(a, &v);
            return v;
        };

        // count of shapes whose signature is exactly a given up-set, by
        // inclusion-exclusion over the elements that can be adjoined one at
        // a time (those with all their dominators inside). If adjoining a
        // single element does not shrink the ideal, every fitting shape
        // also fits that element and the exact class is empty.
        std::vector<BigInt> wval(upsets.size());
        for (size_t i = 0; i < upsets.size(); ++i) {
            uint32_t a = upsets[i];
            uint32_t addable = 0;
            for (int x = 0; x < r; ++x)
                if (!((a >> x) & 1u) && (above[x] & ~a) == 0) addable |= uint32_t(1) << x;
            const BigInt& base = ideal_size(a);
            bool open = true;
            for (uint32_t m = addable; m && open; m &= m - 1)
                open = ideal_size(a | (m & (~m + 1))) < base;
            if (!open) continue;
            BigInt w = base;
            for (uint32_t x = addable; x; x = (x - 1) & addable) {
                if (__builtin_popcount(x) & 1)
                    w -= ideal_size(a | x);
                else
                    w += ideal_size(a | x);
            }
            wval[i] = std::move(w);
        }

        // per input tree: class masks over d, capacities, and for every
        // signature the mask of classes able to host it
        int q = int(ids.size());
        std::vector<std::vector<int>> class_of(q);   // index into d per class
        std::vector<std::vector<int>> class_mult(q);
        for (int i = 0; i < q; ++i)
            for (auto [c, m] : table_.at(ids[i]).classes) {
                class_of[i].push_back(int(std::lower_bound(d.begin(), d.end(), c) - d.begin()));
                class_mult[i].push_back(m);
            }

        // signatures that some tree cannot host at all force n = 0
        struct Sig {
            BigInt w;
            std::vector<uint32_t> tree_mask;  // classes of tree i that host it
        };
        std::vector<Sig> sigs;
        for (size_t i = 0; i < upsets.size(); ++i) {
            uint32_t a = upsets[i];
            if (wval[i] == 0) continue;
            Sig s;
            s.w = std::move(wval[i]);
            bool usable = true;
            for (int i = 0; i < q && usable; ++i) {
                uint32_t m = 0;
                for (size_t k = 0; k < class_of[i].size(); ++k)
                    if ((a >> class_of[i][k]) & 1u) m |= uint32_t(1) << k;
                if (m == 0) usable = false;
                s.tree_mask.push_back(m);
            }
            if (usable) sigs.push_back(std::move(s));
        }

        // enumerate multiplicity vectors over the signatures, keeping those
        // that satisfy Hall's condition inside every tree of the set; usage
        // only grows along the DFS, so a violated prefix can be cut off
        BigInt total = 0;
        std::vector<int> n(sigs.size(), 0);
        auto hall_ok = [&](size_t upto) {
            for (int i = 0; i < q; ++i) {
                int rc = int(class_of[i].size());
                for (uint32_t k = 1; k < (uint32_t(1) << rc); ++k) {
                    int used = 0, cap = 0;
                    for (size_t s = 0; s < upto; ++s)
                        if ((sigs[s].tree_mask[i] & ~k) == 0) used += n[s];
                    for (int c = 0; c < rc; ++c)
                        if ((k >> c) & 1u) cap += class_mult[i][c];
                    if (used > cap) return false;
                }
            }
            return true;
        };
        std::function<void(size_t, int, const BigInt&)> walk =
            [&](size_t s, int left, const BigInt& prod) {
                if (s == sigs.size()) {
                    total += prod;
                    return;
                }
                walk(s + 1, left, prod);
                for (int take = 1; take <= left; ++take) {
                    n[s] = take;
                    if (!hall_ok(s + 1)) break;
                    walk(s + 1, left - take, prod * multichoose(sigs[s].w, take));
                }
                n[s] = 0;
            };
        walk(0, min_children, 1);
        return total;
    }

    struct IdVecHash {
        size_t operator()(const std::vector<int>& v) const noexcept {
            uint64_t h = 1469598103934665603ull;
            for (int x : v) {
                h ^= uint64_t(uint32_t(x));
                h *= 1099511628211ull;
            }
            return size_t(h);
        }
    };

    ShapeTable& table_;
    std::unordered_map<std::vector<int>, BigInt, IdVecHash> memo_;
    std::unordered_map<uint64_t, bool> embed_memo_;
    std::unordered_map<int, std::vector<int>> ideal_memo_;
    std::unordered_set<int> ideal_refused_;
};

// Bottom-up shape ids for every node of t.
std::vector<int> intern_nodes(const RootedTree& t, ShapeTable& table) {
    int n = t.size();
    std::vector<int> sid(n, -1);
    std::vector<std::pair<int, size_t>> stack{{0, 0}};
    while (!stack.empty()) {
        auto& [v, ci] = stack.back();
        if (ci < t.children[v].size()) {
            int c = t.children[v][ci];
            ++ci;
            stack.emplace_back(c, 0);
            continue;
        }
        std::vector<int> kids;
        kids.reserve(t.children[v].size());
        for (int c : t.children[v]) kids.push_back(sid[c]);
        sid[v] = table.intern(std::move(kids));
        stack.pop_back();
    }
    return sid;
}

}  // namespace

std::vector<SubtreeCount> count_subtrees_per_node(const RootedTree& t) {
    if (t.size() == 0) throw DomainError("count_subtrees_per_node: empty tree");
    ShapeTable table;
    std::vector<int> sid = intern_nodes(t, table);
    SubtreeCounter counter(table);
    std::vector<SubtreeCount> out(t.size());
    for (int v = 0; v < t.size(); ++v) {
        BigInt f = counter.count(sid[v]);
        out[v] = {f, f + 1};
    }
    return out;
}

SubtreeCount count_subtrees_exact(const RootedTree& t) {
    if (t.size() == 0) throw DomainError("count_subtrees_exact: empty tree");
    ShapeTable table;
    std::vector<int> sid = intern_nodes(t, table);
    SubtreeCounter counter(table);
    BigInt f = counter.count(sid[0]);
    return {f, f + 1};
}

SubtreeCount count_subtrees_bruteforce(const RootedTree& t) {
    int n = t.size();
    if (n == 0) throw DomainError("count_subtrees_bruteforce: empty tree");
    if (n > 20) throw CapExceeded("count_subtrees_bruteforce: tree larger than 20 nodes");
    std::set<AhuCode> seen;
    for (uint32_t mask = 1; mask < (uint32_t(1) << n); mask += 2) {
        // root-containing subsets of a tree are connected exactly when every
        // chosen node's parent is chosen too
        bool connected = true;
        for (int v = 1; v < n && connected; ++v)
            if ((mask >> v) & 1u) connected = ((mask >> t.parent[v]) & 1u) != 0;
        if (!connected) continue;
        // relabel the subset into its own RootedTree, then encode
        std::vector<int> local(n, -1);
        int count = 0;
        for (int v = 0; v < n; ++v)
            if ((mask >> v) & 1u) local[v] = count++;
        RootedTree sub;
        sub.parent.assign(count, -1);
        sub.children.assign(count, {});
        for (int v = 1; v < n; ++v) {
            if (local[v] < 0) continue;
            sub.parent[local[v]] = local[t.parent[v]];
            sub.children[local[t.parent[v]]].push_back(local[v]);
        }
        seen.insert(ahu_code(sub));
    }
    BigInt f = BigInt(seen.size());
    return {f, f + 1};
}

LogFStats estimate_log_f(const GwConfig& cfg, int replicas, Seed seed, int workers) {
    if (replicas < 1) throw DomainError("estimate_log_f: need at least one replica");
    // slot per replica, reduced sequentially afterwards: the mean never
    // depends on how replicas were split among threads
    std::vector<double> log_f(replicas, 0.0);
    std::vector<uint8_t> truncated(replicas, 0);
    parallel_for_index(replicas, workers, [&](int i) {
        GwSample s = sample_gw_tree(cfg, seed.sub(uint64_t(i)));
        if (s.truncated) {
            truncated[i] = 1;
            return;
        }
        log_f[i] = log_big(count_subtrees_exact(s.tree).f);
    });
    LogFStats out;
    double sum = 0.0, sumsq = 0.0;
    for (int i = 0; i < replicas; ++i) {
        if (truncated[i]) {
            ++out.truncated_count;
            continue;
        }
        sum += log_f[i];
        sumsq += log_f[i] * log_f[i];
        ++out.used_replicas;
    }
    if (out.used_replicas > 0) out.mean = sum / out.used_replicas;
    if (out.used_replicas > 1) {
        double var = (sumsq - sum * sum / out.used_replicas) / (out.used_replicas - 1);
        out.std_error = std::sqrt(std::max(var, 0.0) / out.used_replicas);
    }
    return out;
}

BigInt product_f_lower_bound(const std::vector<RootedTree>& trees) {
    BigInt prod = 1;
    for (const auto& t : trees) prod *= count_subtrees_exact(t).f;
    return prod;
}

double product_log_f(const std::vector<RootedTree>& trees) {
    double total = 0.0;
    for (const auto& t : trees) total += log_big(count_subtrees_exact(t).f);
    return total;
}

}  // namespace mulab
