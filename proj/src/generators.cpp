#include "gridturan/generators.hpp"

#include "gridturan/errors.hpp"

#include <array>
#include <cmath>
#include <random>
#include <stdexcept>

namespace gridturan {

Graph make_path(int t) {
    if (t < 1) throw std::invalid_argument("make_path: need t >= 1");
    std::vector<Edge> edges;
    for (Vertex v = 0; v + 1 < t; ++v) edges.emplace_back(v, v + 1);
    return Graph(t, std::move(edges));
}

Graph cartesian_product(const Graph& g, const Graph& h) {
    if (g.vertex_count() == 0 || h.vertex_count() == 0)
        throw std::invalid_argument("cartesian_product: empty operand");
    const int64_t ng = g.vertex_count(), nh = h.vertex_count();
    if (ng * nh > kDefaultVertexCap)
        throw resource_error("cartesian_product: vertex cap exceeded");
    std::vector<Edge> edges;
    edges.reserve(static_cast<size_t>(ng * h.edge_count() + nh * g.edge_count()));
    auto id = [nh](Vertex u, Vertex v) { return static_cast<Vertex>(u * nh + v); };
    for (Vertex u = 0; u < ng; ++u)
        for (const auto& [v, w] : h.edges())
            edges.emplace_back(id(u, v), id(u, w));
    for (const auto& [u, w] : g.edges())
        for (Vertex v = 0; v < nh; ++v)
            edges.emplace_back(id(u, v), id(w, v));
    return Graph(static_cast<Vertex>(ng * nh), std::move(edges));
}

Graph make_grid(int t, int d, int64_t vertex_cap) {
    if (t < 1 || d < 1) throw std::invalid_argument("make_grid: need t >= 1, d >= 1");
    int64_t size = 1;
    for (int i = 0; i < d; ++i) {
        if (size > vertex_cap / t)
            throw resource_error("make_grid: t^d exceeds vertex cap");
        size *= t;
    }
    Graph g = make_path(t);
    for (int i = 1; i < d; ++i) g = cartesian_product(g, make_path(t));
    return g;
}

TensorPowerView::TensorPowerView(Graph base, int k, Mode mode, int64_t vertex_cap)
    : base_(std::make_shared<const Graph>(std::move(base))), k_(k), mode_(mode) {
    if (k < 1) throw std::invalid_argument("tensor_power: need k >= 1");
    if (mode == Mode::Explicit) {
        int64_t size = 1;
        const int64_t n = base_->vertex_count();
        if (n == 0) throw std::invalid_argument("tensor_power: empty base");
        for (int i = 0; i < k; ++i) {
            if (n != 0 && size > vertex_cap / n)
                throw resource_error("tensor_power: n^k exceeds vertex cap");
            size *= n;
        }
        std::vector<Edge> edges;
        TensorVertex u(k), w(k);
        // Walk neighbors coordinate-wise; emit each unordered pair once.
        for (int64_t uid = 0; uid < size; ++uid) {
            int64_t rem = uid;
            for (int j = k - 1; j >= 0; --j) { u[j] = static_cast<Vertex>(rem % n); rem /= n; }
            std::vector<int> pick(k, 0);
            bool any = true;
            for (int j = 0; j < k; ++j)
                if (base_->degree(u[j]) == 0) { any = false; break; }
            while (any) {
                int64_t wid = 0;
                for (int j = 0; j < k; ++j) {
                    w[j] = base_->neighbors(u[j])[pick[j]];
                    wid = wid * n + w[j];
                }
                if (uid < wid) edges.emplace_back(static_cast<Vertex>(uid), static_cast<Vertex>(wid));
                int j = k - 1;
                while (j >= 0 && ++pick[j] == base_->degree(u[j])) { pick[j] = 0; --j; }
                if (j < 0) break;
            }
        }
        power_.emplace(static_cast<Vertex>(size), std::move(edges));
    }
}

BigInt TensorPowerView::vertex_count() const {
    return int_pow(BigInt(base_->vertex_count()), static_cast<unsigned>(k_));
}

bool TensorPowerView::adjacent(std::span<const Vertex> u, std::span<const Vertex> v) const {
    if (static_cast<int>(u.size()) != k_ || static_cast<int>(v.size()) != k_)
        throw std::invalid_argument("TensorPowerView::adjacent: tuple arity mismatch");
    for (int j = 0; j < k_; ++j)
        if (!base_->has_edge(u[j], v[j])) return false;
    return true;
}

BigInt TensorPowerView::tensor_codegree(std::span<const Vertex> u, std::span<const Vertex> v) const {
    if (static_cast<int>(u.size()) != k_ || static_cast<int>(v.size()) != k_)
        throw std::invalid_argument("TensorPowerView::tensor_codegree: tuple arity mismatch");
    BigInt c = 1;
    for (int j = 0; j < k_; ++j) {
        c *= base_->codegree_raw(u[j], v[j]);
        if (c == 0) return 0;
    }
    return c;
}

BigInt TensorPowerView::tensor_degree(std::span<const Vertex> u) const {
    BigInt d = 1;
    for (int j = 0; j < k_; ++j) {
        d *= base_->degree(u[j]);
        if (d == 0) return 0;
    }
    return d;
}

const Graph& TensorPowerView::materialized() const {
    if (!power_)
        throw std::logic_error("TensorPowerView: not materialized (implicit mode)");
    return *power_;
}

int64_t TensorPowerView::tuple_to_id(std::span<const Vertex> u) const {
    int64_t id = 0;
    for (int j = 0; j < k_; ++j) id = id * base_->vertex_count() + u[j];
    return id;
}

TensorVertex TensorPowerView::id_to_tuple(int64_t id) const {
    TensorVertex u(k_);
    for (int j = k_ - 1; j >= 0; --j) {
        u[j] = static_cast<Vertex>(id % base_->vertex_count());
        id /= base_->vertex_count();
    }
    return u;
}

TensorPowerView tensor_power(const Graph& g, int k, TensorPowerView::Mode mode,
                             int64_t vertex_cap) {
    return TensorPowerView(g, k, mode, vertex_cap);
}

bool is_prime(int q) {
    if (q < 2) return false;
    for (int d = 2; static_cast<int64_t>(d) * d <= q; ++d)
        if (q % d == 0) return false;
    return true;
}

Graph polarity_graph(int q) {
    if (!is_prime(q))
        throw std::invalid_argument("polarity_graph: q must be prime");
    // Canonical projective points: first nonzero coordinate equals 1,
    // enumerated in lexicographic order of (a, b, c).
    std::vector<std::array<int, 3>> pts;
    for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b)
            for (int c = 0; c < q; ++c) {
                int first = a != 0 ? a : (b != 0 ? b : c);
                if (first != 1) continue;
                pts.push_back({a, b, c});
            }
    const int n = static_cast<int>(pts.size()); // q^2 + q + 1
    std::vector<Edge> edges;
    for (Vertex i = 0; i < n; ++i)
        for (Vertex j = i + 1; j < n; ++j) {
            long long dot = 0;
            for (int c = 0; c < 3; ++c) dot += static_cast<long long>(pts[i][c]) * pts[j][c];
            if (dot % q == 0) edges.emplace_back(i, j);
        }
    return Graph(n, std::move(edges));
}

Graph blowup(const Graph& g, int r) {
    if (r < 1) throw std::invalid_argument("blowup: need r >= 1");
    const int64_t n = static_cast<int64_t>(g.vertex_count()) * r;
    if (n > kDefaultVertexCap)
        throw resource_error("blowup: vertex cap exceeded");
    std::vector<Edge> edges;
    edges.reserve(static_cast<size_t>(g.edge_count()) * r * r);
    for (const auto& [u, v] : g.edges())
        for (int a = 0; a < r; ++a)
            for (int b = 0; b < r; ++b)
                edges.emplace_back(static_cast<Vertex>(u * r + a),
                                   static_cast<Vertex>(v * r + b));
    return Graph(static_cast<Vertex>(n), std::move(edges));
}

Graph random_graph(int n, double p, uint64_t seed) {
    if (n < 0) throw std::invalid_argument("random_graph: negative n");
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("random_graph: need 0 <= p <= 1");
    std::vector<Edge> edges;
    if (p > 0.0) {
        std::mt19937_64 gen(seed);
        const bool all = p >= 1.0;
        // ldexp(p, 64) is an exact power-of-two scaling, so the threshold is
        // a deterministic function of the double p.
        const uint64_t threshold = all ? 0 : static_cast<uint64_t>(std::ldexp(p, 64));
        for (Vertex u = 0; u < n; ++u)
            for (Vertex v = u + 1; v < n; ++v) {
                uint64_t draw = gen();
                if (all || draw < threshold) edges.emplace_back(u, v);
            }
    }
    return Graph(n, std::move(edges));
}

} // namespace gridturan
