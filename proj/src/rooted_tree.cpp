#include "mulab/rooted_tree.hpp"

#include <algorithm>
#include <sstream>

#include "mulab/errors.hpp"

namespace mulab {

namespace {

// Iterative post-order AHU so deep paths cannot overflow the call stack.
AhuCode ahu_of(const RootedTree& t, int root) {
    std::vector<AhuCode> code(t.size());
    std::vector<std::pair<int, size_t>> stack;
    stack.emplace_back(root, 0);
    while (!stack.empty()) {
        auto& [v, ci] = stack.back();
        if (ci < t.children[v].size()) {
            int c = t.children[v][ci];
            ++ci;
            stack.emplace_back(c, 0);
            continue;
        }
        std::vector<AhuCode> kid;
        kid.reserve(t.children[v].size());
        for (int c : t.children[v]) kid.push_back(std::move(code[c]));
        std::sort(kid.begin(), kid.end());
        AhuCode& out = code[v];
        out = "(";
        for (auto& k : kid) out += k;
        out += ")";
        stack.pop_back();
    }
    return code[root];
}

}  // namespace

AhuCode ahu_code(const RootedTree& t) {
    if (t.size() == 0) throw DomainError("ahu_code: empty tree");
    return ahu_of(t, 0);
}

RootedTree tree_from_parents(const std::vector<int>& parent) {
    int n = int(parent.size());
    if (n == 0) throw DomainError("tree_from_parents: empty parent array");
    if (parent[0] != -1) throw DomainError("tree_from_parents: node 0 must be the root");
    RootedTree t;
    t.parent = parent;
    t.children.assign(n, {});
    for (int v = 1; v < n; ++v) {
        if (parent[v] < 0 || parent[v] >= n || parent[v] == v)
            throw DomainError("tree_from_parents: bad parent entry");
        t.children[parent[v]].push_back(v);
    }
    // acyclicity: every node must reach the root
    std::vector<int8_t> state(n, 0);
    for (int v = 0; v < n; ++v) {
        int u = v, steps = 0;
        while (u != 0 && state[u] == 0) {
            u = parent[u];
            if (++steps > n) throw DomainError("tree_from_parents: cycle detected");
        }
        state[v] = 1;
    }
    return t;
}

std::string tree_to_text(const RootedTree& t) {
    std::ostringstream out;
    for (int v = 0; v < t.size(); ++v) out << v << ' ' << t.parent[v] << '\n';
    return out.str();
}

RootedTree tree_from_text(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::vector<std::pair<int, int>> entries;
    int max_node = -1;
    while (std::getline(in, line)) {
        size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream ls(line);
        int node, par;
        if (!(ls >> node >> par)) throw ParseError("tree: expected 'node parent' on line: " + line);
        entries.emplace_back(node, par);
        max_node = std::max(max_node, node);
    }
    if (max_node < 0) throw ParseError("tree: no nodes");
    std::vector<int> parent(max_node + 1, -2);
    for (auto [node, par] : entries) {
        if (node < 0 || parent[node] != -2) throw ParseError("tree: duplicate or bad node index");
        parent[node] = par;
    }
    for (int v = 0; v <= max_node; ++v)
        if (parent[v] == -2) throw ParseError("tree: missing node index");
    return tree_from_parents(parent);
}

RootedTree root_component_at(const Graph& g, const std::vector<int>& component,
                             int root, std::vector<int>* labels_out) {
    // Components are small, so a scan-based membership check keeps this simple.
    auto comp_index = [&](int v) {
        for (size_t i = 0; i < component.size(); ++i)
            if (component[i] == v) return int(i);
        return -1;
    };
    int ri = comp_index(root);
    if (ri < 0) throw DomainError("root_component_at: root not in component");
    std::vector<int> order{root};
    std::vector<int> parent{-1};
    std::vector<int8_t> seen(component.size(), 0);
    seen[ri] = 1;
    for (size_t head = 0; head < order.size(); ++head) {
        int v = order[head];
        for (int u : component) {
            int ui = comp_index(u);
            if (seen[ui] || !g.has_edge(v, u)) continue;
            seen[ui] = 1;
            order.push_back(u);
            parent.push_back(int(head));
        }
    }
    if (order.size() != component.size())
        throw DomainError("root_component_at: component is not connected");
    RootedTree t;
    t.parent = parent;
    t.children.assign(order.size(), {});
    for (size_t v = 1; v < order.size(); ++v) t.children[parent[v]].push_back(int(v));
    if (labels_out) *labels_out = order;
    return t;
}

std::vector<int> tree_centres(const Graph& g, const std::vector<int>& component) {
    int k = int(component.size());
    if (k == 0) throw DomainError("tree_centres: empty component");
    if (k == 1) return {component[0]};
    // peel leaves layer by layer; the last one or two survivors are centres
    std::vector<int> deg(k), alive(k, 1);
    for (int i = 0; i < k; ++i) {
        int d = 0;
        for (int j = 0; j < k; ++j)
            if (i != j && g.has_edge(component[i], component[j])) ++d;
        deg[i] = d;
    }
    int remaining = k;
    std::vector<int> layer;
    for (int i = 0; i < k; ++i)
        if (deg[i] <= 1) layer.push_back(i);
    while (remaining > 2) {
        std::vector<int> next;
        for (int i : layer) {
            alive[i] = 0;
            --remaining;
        }
        for (int i : layer) {
            for (int j = 0; j < k; ++j) {
                if (!alive[j] || !g.has_edge(component[i], component[j])) continue;
                if (--deg[j] == 1) next.push_back(j);
            }
        }
        layer = std::move(next);
        if (layer.empty() && remaining > 2)
            throw DomainError("tree_centres: component is not a tree");
    }
    std::vector<int> centres;
    for (int i = 0; i < k; ++i)
        if (alive[i]) centres.push_back(component[i]);
    return centres;
}

AhuCode unrooted_tree_code(const Graph& g, const std::vector<int>& component) {
    std::vector<int> centres = tree_centres(g, component);
    AhuCode best;
    for (size_t i = 0; i < centres.size(); ++i) {
        RootedTree t = root_component_at(g, component, centres[i]);
        AhuCode c = ahu_code(t);
        if (i == 0 || c < best) best = std::move(c);
    }
    return best;
}

RootedTree rooted_path(int nodes) {
    if (nodes <= 0) throw DomainError("rooted_path: need at least one node");
    std::vector<int> parent(nodes);
    parent[0] = -1;
    for (int v = 1; v < nodes; ++v) parent[v] = v - 1;
    return tree_from_parents(parent);
}

RootedTree rooted_star(int leaves) {
    std::vector<int> parent(leaves + 1);
    parent[0] = -1;
    for (int v = 1; v <= leaves; ++v) parent[v] = 0;
    return tree_from_parents(parent);
}

}  // namespace mulab
