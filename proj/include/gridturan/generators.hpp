#pragma once

#include "gridturan/graph.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace gridturan {

/// A vertex of the k-th tensor power: a k-tuple of base-graph vertex ids.
using TensorVertex = std::vector<Vertex>;

constexpr int64_t kDefaultVertexCap = 1 << 20;

/// Path with t vertices, 0 - 1 - ... - (t-1).
Graph make_path(int t);

/// Cartesian product: vertex (u, v) gets id u * n_H + v (row-major);
/// (u,v) ~ (u',v') iff (u == u' and vv' in E(H)) or (uu' in E(G) and v == v').
Graph cartesian_product(const Graph& g, const Graph& h);

/// d-fold Cartesian power of P_t, built by left-folding cartesian_product.
/// d = 2 gives the t x t grid.
Graph make_grid(int t, int d, int64_t vertex_cap = kDefaultVertexCap);

/// The k-th tensor power of a base graph. Tuples are adjacent iff they are
/// adjacent in the base in every coordinate, hence degrees and codegrees
/// multiply across coordinates. Implicit mode answers adjacency and codegree
/// queries straight from the base; explicit mode also materializes the power
/// as a Graph under lexicographic tuple labeling.
class TensorPowerView {
public:
    enum class Mode { Implicit, Explicit };

    TensorPowerView(Graph base, int k, Mode mode, int64_t vertex_cap = kDefaultVertexCap);

    const Graph& base() const { return *base_; }
    int k() const { return k_; }
    Mode mode() const { return mode_; }

    BigInt vertex_count() const; // n^k

    bool adjacent(std::span<const Vertex> u, std::span<const Vertex> v) const;

    /// Codegree in the power graph: prod_j d_base(u_j, v_j), exact.
    BigInt tensor_codegree(std::span<const Vertex> u, std::span<const Vertex> v) const;

    /// Degree in the power graph: prod_j deg(u_j).
    BigInt tensor_degree(std::span<const Vertex> u) const;

    /// Explicit mode only.
    const Graph& materialized() const;

    /// Lexicographic labeling of the explicit power (u_1 most significant).
    int64_t tuple_to_id(std::span<const Vertex> u) const;
    TensorVertex id_to_tuple(int64_t id) const;

private:
    std::shared_ptr<const Graph> base_;
    int k_;
    Mode mode_;
    std::optional<Graph> power_;
};

TensorPowerView tensor_power(const Graph& g, int k, TensorPowerView::Mode mode,
                             int64_t vertex_cap = kDefaultVertexCap);

/// Polarity graph of the projective plane PG(2, q), q prime: vertices are the
/// q^2+q+1 projective points, listed in lexicographic order of their canonical
/// representatives (first nonzero coordinate scaled to 1); u ~ v iff
/// u . v == 0 (mod q) and u != v. Absolute points lose their loop and have
/// degree q; the rest have degree q+1; e = q(q+1)^2 / 2. The result is C4-free.
Graph polarity_graph(int q);

/// Each vertex v becomes r independent clones with ids v*r .. v*r + (r-1);
/// clone classes are fully joined iff the original vertices were adjacent.
Graph blowup(const Graph& g, int r);

/// Erdos-Renyi G(n, p) with a fixed, documented generator: std::mt19937_64
/// seeded with `seed`, pairs visited in lexicographic order (u < v), pair
/// included iff the next 64-bit draw is < ldexp(p, 64). Identical
/// (n, p, seed) yields the identical graph on any platform.
Graph random_graph(int n, double p, uint64_t seed);

bool is_prime(int q);

} // namespace gridturan
