#include "mulab/graph_io.hpp"

#include <sstream>

#include "mulab/errors.hpp"

namespace mulab {

namespace {

const char* kHeader = ">>graph6<<";

void append_size(std::string& out, long long n) {
    if (n < 0) throw DomainError("graph6: negative size");
    if (n <= 62) {
        out.push_back(char(n + 63));
    } else if (n <= 258047) {
        out.push_back(char(126));
        for (int shift = 12; shift >= 0; shift -= 6)
            out.push_back(char(((n >> shift) & 63) + 63));
    } else if (n <= 68719476735LL) {
        out.push_back(char(126));
        out.push_back(char(126));
        for (int shift = 30; shift >= 0; shift -= 6)
            out.push_back(char(((n >> shift) & 63) + 63));
    } else {
        throw DomainError("graph6: size too large");
    }
}

long long read_size(const std::string& s, size_t& pos) {
    auto byte = [&](size_t i) -> long long {
        if (i >= s.size()) throw ParseError("graph6: truncated size field");
        long long b = (unsigned char)s[i];
        if (b < 63 || b > 126) throw ParseError("graph6: byte out of range");
        return b - 63;
    };
    if (byte(pos) != 63) return byte(pos++);
    ++pos;
    int groups = 3;
    if (byte(pos) == 63) {  // '~~' prefix
        ++pos;
        groups = 6;
    }
    long long n = 0;
    for (int i = 0; i < groups; ++i) n = (n << 6) | byte(pos++);
    return n;
}

}  // namespace

std::string to_graph6(const Graph& g) {
    std::string out;
    long long n = g.vertex_count();
    append_size(out, n);
    // Upper-triangle bits in column order: (0,1), (0,2), (1,2), (0,3), ...
    int acc = 0, nbits = 0;
    for (int j = 1; j < n; ++j) {
        for (int i = 0; i < j; ++i) {
            acc = (acc << 1) | (g.has_edge(i, j) ? 1 : 0);
            if (++nbits == 6) {
                out.push_back(char(acc + 63));
                acc = 0;
                nbits = 0;
            }
        }
    }
    if (nbits > 0) out.push_back(char((acc << (6 - nbits)) + 63));
    return out;
}

Graph from_graph6(const std::string& input) {
    std::string s = input;
    if (s.rfind(kHeader, 0) == 0) s = s.substr(std::string(kHeader).size());
    while (!s.empty() && (s.back() == '\n' || s.back() == '\r')) s.pop_back();
    size_t pos = 0;
    long long n = read_size(s, pos);
    if (n > 1000000) throw ParseError("graph6: refusing absurd vertex count");
    Graph g(static_cast<int>(n));
    int acc = 0, left = 0;
    for (int j = 1; j < n; ++j) {
        for (int i = 0; i < j; ++i) {
            if (left == 0) {
                if (pos >= s.size()) throw ParseError("graph6: truncated bits");
                int b = (unsigned char)s[pos++];
                if (b < 63 || b > 126) throw ParseError("graph6: byte out of range");
                acc = b - 63;
                left = 6;
            }
            if ((acc >> (left - 1)) & 1) g.add_edge(i, j);
            --left;
        }
    }
    // Padding bits must be zero and no bytes may remain.
    if (left > 0 && (acc & ((1 << left) - 1)) != 0)
        throw ParseError("graph6: nonzero padding");
    if (pos != s.size()) throw ParseError("graph6: trailing bytes");
    return g;
}

std::string to_edge_list(const Graph& g) {
    std::ostringstream out;
    int n = g.vertex_count();
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (g.has_edge(u, v)) out << u << ' ' << v << '\n';
    return out.str();
}

Graph from_edge_list(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::vector<std::pair<long, long>> edges;
    long max_label = -1;
    while (std::getline(in, line)) {
        size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream ls(line);
        long u, v;
        if (!(ls >> u >> v)) throw ParseError("edge list: expected 'u v' on line: " + line);
        std::string rest;
        if (ls >> rest) throw ParseError("edge list: trailing tokens on line: " + line);
        if (u < 0 || v < 0) throw ParseError("edge list: negative vertex label");
        if (u == v) throw ParseError("edge list: loop edge");
        if (u > 1000000 || v > 1000000) throw ParseError("edge list: label too large");
        edges.emplace_back(u, v);
        max_label = std::max(max_label, std::max(u, v));
    }
    Graph g(int(max_label + 1));
    for (auto [u, v] : edges) g.add_edge(int(u), int(v));
    return g;
}

Graph parse_graph(const std::string& text) {
    for (char c : text) {
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r') continue;
        unsigned char b = (unsigned char)c;
        // Digits (48..57) and '#' (35) fall below the graph6 byte range.
        if (b == '>' || b >= 63) return from_graph6(text);
        return from_edge_list(text);
    }
    throw ParseError("parse_graph: empty input");
}

}  // namespace mulab
