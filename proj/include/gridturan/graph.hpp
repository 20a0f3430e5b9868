#pragma once

#include "gridturan/rational.hpp"

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace gridturan {

using Vertex = int32_t;
using Edge = std::pair<Vertex, Vertex>; // normalized u < v

/// Immutable simple undirected graph over dense 0-based vertex ids.
///
/// Construction validates the edge list (no self-loops, no duplicates,
/// ids in range) and normalizes it to the canonical sorted form. After
/// construction the object never changes, so concurrent reads are safe.
class Graph {
public:
    Graph() = default;
    Graph(Vertex n, std::vector<Edge> edges);

    Vertex vertex_count() const { return n_; }
    int64_t edge_count() const { return static_cast<int64_t>(edges_.size()); }

    int degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }

    std::span<const Vertex> neighbors(Vertex v) const {
        return {adj_.data() + offsets_[v], adj_.data() + offsets_[v + 1]};
    }

    bool has_edge(Vertex u, Vertex v) const;

    /// Canonical edge list: pairs (u, v) with u < v, lexicographically sorted.
    const std::vector<Edge>& edges() const { return edges_; }

    /// |N(u) & N(v)| for u != v; degree(u) for u == v. No range checks here;
    /// the checked entry point is the free function codegree().
    int codegree_raw(Vertex u, Vertex v) const;

    bool has_bitset() const { return !bits_.empty(); }
    int row_words() const { return row_words_; }
    const uint64_t* adjacency_row(Vertex v) const { return bits_.data() + static_cast<size_t>(v) * row_words_; }

    /// Induced subgraph on `keep` (ascending, distinct ids); vertex i of the
    /// result is keep[i].
    Graph induced(const std::vector<Vertex>& keep) const;

    bool valid_vertex(Vertex v) const { return v >= 0 && v < n_; }

private:
    Vertex n_ = 0;
    std::vector<Edge> edges_;
    std::vector<int32_t> offsets_; // CSR offsets, size n_+1
    std::vector<Vertex> adj_;      // sorted neighbor lists
    std::vector<uint64_t> bits_;   // adjacency rows, built for small n only
    int row_words_ = 0;
};

struct DegreeStats {
    int min_deg = 0;
    BigRat avg_deg; // exact 2e/n
    int max_deg = 0;
};

/// Number of common neighbors; codegree(u, u) is defined as deg(u).
/// Throws std::invalid_argument on out-of-range ids.
int codegree(const Graph& g, Vertex u, Vertex v);

/// Exact (min, avg, max) degree; throws on an empty vertex set.
DegreeStats degree_stats(const Graph& g);

/// The density coefficient alpha = e(G) / n^{3/2}, carried exactly.
Density edge_density_alpha(const Graph& g);

struct PeelResult {
    Graph graph;              // induced subgraph on the survivors
    std::vector<Vertex> kept; // survivor ids in the input graph, ascending
    bool empty() const { return graph.vertex_count() == 0; }
};

/// Repeatedly removes any vertex whose current degree is below `threshold`
/// (strictly), until none remains. The threshold is fixed at call time and
/// never recomputed. Every vertex of the result has degree >= threshold
/// inside the result; the result may be empty, which the caller can detect
/// via PeelResult::empty().
PeelResult peel_min_degree(const Graph& g, const BigRat& threshold);

} // namespace gridturan
