#pragma once

// Independent brute-force oracles and small fixtures shared by the test
// suites. Everything here is deliberately naive: these routines provide the
// ground truth that the library implementations are checked against, so they
// must not share code with them.

#include "gridturan/graph.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <vector>

namespace testsupport {

using gridturan::Edge;
using gridturan::Graph;
using gridturan::Vertex;

inline Graph complete_graph(int n) {
    std::vector<Edge> edges;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v) edges.emplace_back(u, v);
    return Graph(n, std::move(edges));
}

inline Graph cycle_graph(int n) {
    std::vector<Edge> edges;
    for (Vertex v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
    if (n >= 3) edges.emplace_back(0, n - 1);
    return Graph(n, std::move(edges));
}

inline Graph star_graph(int leaves) {
    std::vector<Edge> edges;
    for (Vertex v = 1; v <= leaves; ++v) edges.emplace_back(0, v);
    return Graph(leaves + 1, std::move(edges));
}

/// All graphs on exactly n labeled vertices (2^C(n,2) of them). Keep n <= 5.
inline std::vector<Graph> all_graphs(int n) {
    std::vector<std::pair<Vertex, Vertex>> pairs;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
    std::vector<Graph> out;
    for (uint64_t mask = 0; mask < (uint64_t{1} << pairs.size()); ++mask) {
        std::vector<Edge> edges;
        for (size_t i = 0; i < pairs.size(); ++i)
            if ((mask >> i) & 1) edges.push_back(pairs[i]);
        out.emplace_back(n, std::move(edges));
    }
    return out;
}

/// Naive subgraph test: tries every injective map V(H) -> V(G).
inline bool naive_contains(const Graph& g, const Graph& h) {
    const int nh = h.vertex_count();
    if (nh > g.vertex_count()) return false;
    std::vector<Vertex> map(nh, -1);
    std::vector<char> used(g.vertex_count(), 0);
    std::function<bool(int)> rec = [&](int i) -> bool {
        if (i == nh) return true;
        for (Vertex gv = 0; gv < g.vertex_count(); ++gv) {
            if (used[gv]) continue;
            bool ok = true;
            for (Vertex w : h.neighbors(i))
                if (w < i && !g.has_edge(gv, map[w])) { ok = false; break; }
            if (!ok) continue;
            map[i] = gv;
            used[gv] = 1;
            if (rec(i + 1)) return true;
            used[gv] = 0;
        }
        return false;
    };
    return rec(0);
}

/// Naive t-ladder count: loops over all n^{2t} tuples and tests the pattern.
/// Only for tiny graphs.
inline long long naive_ladder_count(const Graph& g, int t) {
    const int n = g.vertex_count();
    std::vector<Vertex> tup(2 * t, 0);
    long long count = 0;
    std::function<void(int)> rec = [&](int pos) {
        if (pos == 2 * t) {
            for (int i = 0; i + 1 < t; ++i) {
                if (!g.has_edge(tup[2 * i], tup[2 * i + 2])) return;     // x_i x_{i+1}
                if (!g.has_edge(tup[2 * i + 1], tup[2 * i + 3])) return; // y_i y_{i+1}
                if (!g.has_edge(tup[2 * i], tup[2 * i + 1])) return;     // x_i y_i
            }
            if (!g.has_edge(tup[2 * t - 2], tup[2 * t - 1])) return;     // x_t y_t
            ++count;
            return;
        }
        for (Vertex v = 0; v < n; ++v) {
            tup[pos] = v;
            rec(pos + 1);
        }
    };
    rec(0);
    return count;
}

/// Naive ex(n, H): filter all 2^C(n,2) graphs. Only for n <= 5.
inline int naive_turan(int n, const Graph& h) {
    int best = 0;
    for (const Graph& g : all_graphs(n))
        if (!naive_contains(g, h)) best = std::max<int>(best, static_cast<int>(g.edge_count()));
    return best;
}

} // namespace testsupport
