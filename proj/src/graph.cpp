#include "gridturan/graph.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <stdexcept>
#include <string>

namespace gridturan {

namespace {
// Adjacency bitsets cost n^2/8 bytes; skip them for big vertex sets.
constexpr Vertex kBitsetLimit = 8192;
} // namespace

Graph::Graph(Vertex n, std::vector<Edge> edges) : n_(n) {
    if (n < 0) throw std::invalid_argument("Graph: negative vertex count");
    for (auto& [u, v] : edges) {
        if (u < 0 || v < 0 || u >= n || v >= n)
            throw std::invalid_argument("Graph: vertex id out of range");
        if (u == v)
            throw std::invalid_argument("Graph: self-loop at vertex " + std::to_string(u));
        if (u > v) std::swap(u, v);
    }
    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
        throw std::invalid_argument("Graph: duplicate edge");
    edges_ = std::move(edges);

    offsets_.assign(static_cast<size_t>(n_) + 1, 0);
    for (const auto& [u, v] : edges_) {
        ++offsets_[u + 1];
        ++offsets_[v + 1];
    }
    for (Vertex v = 0; v < n_; ++v) offsets_[v + 1] += offsets_[v];
    adj_.resize(static_cast<size_t>(2) * edges_.size());
    std::vector<int32_t> cursor(offsets_.begin(), offsets_.end() - 1);
    for (const auto& [u, v] : edges_) {
        adj_[cursor[u]++] = v;
        adj_[cursor[v]++] = u;
    }
    for (Vertex v = 0; v < n_; ++v)
        std::sort(adj_.begin() + offsets_[v], adj_.begin() + offsets_[v + 1]);

    if (n_ > 0 && n_ <= kBitsetLimit) {
        row_words_ = (n_ + 63) / 64;
        bits_.assign(static_cast<size_t>(n_) * row_words_, 0);
        for (const auto& [u, v] : edges_) {
            bits_[static_cast<size_t>(u) * row_words_ + v / 64] |= uint64_t{1} << (v % 64);
            bits_[static_cast<size_t>(v) * row_words_ + u / 64] |= uint64_t{1} << (u % 64);
        }
    }
}

bool Graph::has_edge(Vertex u, Vertex v) const {
    if (u == v) return false;
    if (!bits_.empty())
        return (bits_[static_cast<size_t>(u) * row_words_ + v / 64] >> (v % 64)) & 1;
    auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
}

int Graph::codegree_raw(Vertex u, Vertex v) const {
    if (u == v) return degree(u);
    if (!bits_.empty()) {
        const uint64_t* a = adjacency_row(u);
        const uint64_t* b = adjacency_row(v);
        int c = 0;
        for (int w = 0; w < row_words_; ++w) c += std::popcount(a[w] & b[w]);
        return c;
    }
    auto a = neighbors(u);
    auto b = neighbors(v);
    int c = 0;
    size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] < b[j]) ++i;
        else if (a[i] > b[j]) ++j;
        else { ++c; ++i; ++j; }
    }
    return c;
}

Graph Graph::induced(const std::vector<Vertex>& keep) const {
    std::vector<Vertex> pos(n_, -1);
    for (size_t i = 0; i < keep.size(); ++i) {
        if (!valid_vertex(keep[i]))
            throw std::invalid_argument("Graph::induced: vertex out of range");
        pos[keep[i]] = static_cast<Vertex>(i);
    }
    std::vector<Edge> sub;
    for (const auto& [u, v] : edges_)
        if (pos[u] >= 0 && pos[v] >= 0)
            sub.emplace_back(pos[u], pos[v]);
    return Graph(static_cast<Vertex>(keep.size()), std::move(sub));
}

int codegree(const Graph& g, Vertex u, Vertex v) {
    if (!g.valid_vertex(u) || !g.valid_vertex(v))
        throw std::invalid_argument("codegree: vertex id out of range");
    return g.codegree_raw(u, v);
}

DegreeStats degree_stats(const Graph& g) {
    if (g.vertex_count() == 0)
        throw std::invalid_argument("degree_stats: empty vertex set");
    DegreeStats s;
    s.min_deg = g.degree(0);
    s.max_deg = g.degree(0);
    for (Vertex v = 1; v < g.vertex_count(); ++v) {
        s.min_deg = std::min(s.min_deg, g.degree(v));
        s.max_deg = std::max(s.max_deg, g.degree(v));
    }
    s.avg_deg = BigRat(BigInt(2) * g.edge_count(), BigInt(g.vertex_count()));
    return s;
}

Density edge_density_alpha(const Graph& g) {
    if (g.vertex_count() == 0)
        throw std::invalid_argument("edge_density_alpha: empty vertex set");
    return Density::from_edge_density(g.edge_count(), g.vertex_count());
}

PeelResult peel_min_degree(const Graph& g, const BigRat& threshold) {
    if (threshold < 0)
        throw std::invalid_argument("peel_min_degree: negative threshold");
    std::vector<int64_t> deg(g.vertex_count());
    std::vector<char> alive(g.vertex_count(), 1);
    std::deque<Vertex> queue;
    auto below = [&](Vertex v) { return BigRat(deg[v]) < threshold; };
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        deg[v] = g.degree(v);
        if (below(v)) queue.push_back(v);
    }
    std::vector<char> queued(g.vertex_count(), 0);
    for (Vertex v : queue) queued[v] = 1;
    while (!queue.empty()) {
        Vertex v = queue.front();
        queue.pop_front();
        if (!alive[v]) continue;
        alive[v] = 0;
        for (Vertex w : g.neighbors(v)) {
            if (!alive[w]) continue;
            --deg[w];
            if (!queued[w] && below(w)) {
                queued[w] = 1;
                queue.push_back(w);
            }
        }
    }
    PeelResult r;
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        if (alive[v]) r.kept.push_back(v);
    r.graph = g.induced(r.kept);
    return r;
}

} // namespace gridturan
