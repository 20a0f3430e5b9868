#include "gridturan/cleaning.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

namespace gridturan {

namespace {

/// Mutable adjacency bitset used while edges are being deleted.
struct WorkGraph {
    int n = 0;
    int words = 0;
    std::vector<uint64_t> bits;
    std::vector<int> deg;
    int64_t edges = 0;

    explicit WorkGraph(const Graph& g)
        : n(g.vertex_count()), words((g.vertex_count() + 63) / 64),
          bits(static_cast<size_t>(g.vertex_count()) * words, 0),
          deg(g.vertex_count(), 0), edges(g.edge_count()) {
        for (const auto& [u, v] : g.edges()) {
            set(u, v);
            set(v, u);
        }
        for (int v = 0; v < n; ++v) deg[v] = g.degree(v);
    }

    uint64_t* row(int v) { return bits.data() + static_cast<size_t>(v) * words; }
    const uint64_t* row(int v) const { return bits.data() + static_cast<size_t>(v) * words; }
    void set(int u, int v) { row(u)[v / 64] |= uint64_t{1} << (v % 64); }
    bool has(int u, int v) const { return (row(u)[v / 64] >> (v % 64)) & 1; }

    void remove_edge(int u, int v) {
        row(u)[v / 64] &= ~(uint64_t{1} << (v % 64));
        row(v)[u / 64] &= ~(uint64_t{1} << (u % 64));
        --deg[u];
        --deg[v];
        --edges;
    }

    int codeg(int u, int v) const {
        const uint64_t* a = row(u);
        const uint64_t* b = row(v);
        int c = 0;
        for (int w = 0; w < words; ++w) c += std::popcount(a[w] & b[w]);
        return c;
    }

    template <class F>
    void for_each_neighbor(int v, F&& f) const {
        const uint64_t* r = row(v);
        for (int w = 0; w < words; ++w) {
            uint64_t bitsw = r[w];
            while (bitsw) {
                int b = std::countr_zero(bitsw);
                bitsw &= bitsw - 1;
                f(w * 64 + b);
            }
        }
    }

    Graph to_graph() const {
        std::vector<Edge> es;
        es.reserve(static_cast<size_t>(edges));
        for (int u = 0; u < n; ++u)
            for_each_neighbor(u, [&](int v) {
                if (u < v) es.emplace_back(u, v);
            });
        return Graph(n, std::move(es));
    }
};

struct CleaningThresholds {
    int64_t n = 0;
    int64_t e0 = 0;
    int64_t t1_max = 0;   // type-1 trigger: 1 <= deg <= t1_max
    int64_t need = 0;     // per-edge condition: count >= need
    int64_t codeg_min = 0; // qualifying: d(v, w) >= codeg_min

    explicit CleaningThresholds(const Graph& g) {
        n = g.vertex_count();
        e0 = g.edge_count();
        t1_max = e0 / (4 * n); // deg <= e0/(4n) <=> 4n deg <= e0
        need = (e0 + 8 * n - 1) / (8 * n);
        // smallest c with 32 n^3 c >= e0^2
        BigInt num = BigInt(e0) * e0;
        BigInt den = BigInt(32) * n * n * n;
        codeg_min = static_cast<int64_t>((num + den - 1) / den);
    }
};

// True when u has >= need neighbours w (w = v allowed) with d(v, w) >= codeg_min.
bool edge_condition_holds(const WorkGraph& wg, const CleaningThresholds& th, int u, int v) {
    if (th.need <= 0) return true;
    int64_t count = 0;
    bool done = false;
    wg.for_each_neighbor(u, [&](int w) {
        if (done) return;
        int64_t q = (w == v) ? wg.deg[v] : wg.codeg(v, w);
        if (q >= th.codeg_min && ++count >= th.need) done = true;
    });
    return count >= th.need;
}

} // namespace

int64_t CleaningReport::type1_count() const {
    return std::count_if(log.begin(), log.end(),
                         [](const CleaningStep& s) { return s.kind == CleaningStep::Kind::Type1; });
}

int64_t CleaningReport::type2_count() const {
    return std::count_if(log.begin(), log.end(),
                         [](const CleaningStep& s) { return s.kind == CleaningStep::Kind::Type2; });
}

std::pair<Graph, CleaningReport> clean_subgraph(const Graph& g, DeletionOrder order, uint64_t seed) {
    const int n = g.vertex_count();
    if (n < 1) throw std::invalid_argument("clean_subgraph: need n >= 1");

    CleaningThresholds th(g);
    WorkGraph wg(g);

    CleaningReport report;
    report.input_alpha = edge_density_alpha(g);
    report.input_edges = g.edge_count();

    std::vector<int> scan(n);
    std::iota(scan.begin(), scan.end(), 0);
    if (order == DeletionOrder::Seeded) {
        std::mt19937_64 gen(seed);
        std::shuffle(scan.begin(), scan.end(), gen);
    }

    for (;;) {
        // Type 1 takes priority: exhaust low-degree vertices first.
        bool deleted = true;
        while (deleted) {
            deleted = false;
            for (int u : scan) {
                if (wg.deg[u] >= 1 && wg.deg[u] <= th.t1_max) {
                    CleaningStep step{CleaningStep::Kind::Type1, static_cast<Vertex>(u), -1, wg.deg[u]};
                    std::vector<int> nbrs;
                    wg.for_each_neighbor(u, [&](int w) { nbrs.push_back(w); });
                    for (int w : nbrs) wg.remove_edge(u, w);
                    report.log.push_back(step);
                    deleted = true;
                    break;
                }
            }
        }
        // Then a single type-2 deletion, if any orientation violates.
        bool removed = false;
        std::vector<int> rank(n);
        for (int i = 0; i < n; ++i) rank[scan[i]] = i;
        for (int u : scan) {
            std::vector<int> nbrs;
            wg.for_each_neighbor(u, [&](int w) { nbrs.push_back(w); });
            if (order == DeletionOrder::Seeded)
                std::sort(nbrs.begin(), nbrs.end(),
                          [&](int a, int b) { return rank[a] < rank[b]; });
            for (int v : nbrs) {
                if (!edge_condition_holds(wg, th, u, v)) {
                    wg.remove_edge(u, v);
                    report.log.push_back({CleaningStep::Kind::Type2, static_cast<Vertex>(u),
                                          static_cast<Vertex>(v), 1});
                    removed = true;
                    break;
                }
            }
            if (removed) break;
        }
        if (!removed) break;
    }

    Graph out = wg.to_graph();
    report.output_edges = out.edge_count();
    return {std::move(out), std::move(report)};
}

Graph replay_cleaning(const Graph& g, const CleaningReport& report) {
    WorkGraph wg(g);
    for (const CleaningStep& step : report.log) {
        if (step.kind == CleaningStep::Kind::Type1) {
            std::vector<int> nbrs;
            wg.for_each_neighbor(step.u, [&](int w) { nbrs.push_back(w); });
            if (static_cast<int>(nbrs.size()) != step.edges_removed)
                throw std::logic_error("replay_cleaning: type-1 degree mismatch");
            for (int w : nbrs) wg.remove_edge(step.u, w);
        } else {
            if (!wg.has(step.u, step.v))
                throw std::logic_error("replay_cleaning: type-2 edge missing");
            wg.remove_edge(step.u, step.v);
        }
    }
    return wg.to_graph();
}

CleaningPostcheck check_cleaning_postconditions(const Graph& input, const Graph& output,
                                                const CleaningReport& report) {
    CleaningThresholds th(input);
    CleaningPostcheck out;
    out.edge_bound = 2 * output.edge_count() >= th.e0;
    out.degree_condition = true;
    for (Vertex v = 0; v < output.vertex_count(); ++v) {
        int d = output.degree(v);
        if (d != 0 && 4 * th.n * d <= th.e0) out.degree_condition = false;
    }
    WorkGraph wg(output);
    out.per_edge_condition = true;
    for (Vertex u = 0; u < output.vertex_count() && out.per_edge_condition; ++u)
        for (Vertex v : output.neighbors(u))
            if (!edge_condition_holds(wg, th, u, v)) {
                out.per_edge_condition = false;
                break;
            }
    out.type2_bound = 4 * report.type2_count() <= th.e0;
    return out;
}

RegularizeResult regularize(const Graph& g) {
    if (g.edge_count() < 1)
        throw std::invalid_argument("regularize: need at least one edge");
    const int n = g.vertex_count();
    std::vector<int> cls(n, -1);
    int max_cls = 0;
    for (Vertex v = 0; v < n; ++v)
        if (g.degree(v) >= 1) {
            cls[v] = std::bit_width(static_cast<unsigned>(g.degree(v))) - 1;
            max_cls = std::max(max_cls, cls[v]);
        }

    int best_class = -1;
    int64_t best_edges = -1;
    std::vector<char> in_set(n, 0);
    for (int c = 0; c <= max_cls; ++c) {
        std::fill(in_set.begin(), in_set.end(), 0);
        bool nonempty = false;
        for (Vertex v = 0; v < n; ++v)
            if (cls[v] == c) {
                nonempty = true;
                in_set[v] = 1;
                for (Vertex w : g.neighbors(v)) in_set[w] = 1;
            }
        if (!nonempty) continue;
        int64_t retained = 0;
        for (const auto& [u, v] : g.edges())
            if (in_set[u] && in_set[v]) ++retained;
        if (retained > best_edges) {
            best_edges = retained;
            best_class = c;
        }
    }

    std::fill(in_set.begin(), in_set.end(), 0);
    for (Vertex v = 0; v < n; ++v)
        if (cls[v] == best_class) {
            in_set[v] = 1;
            for (Vertex w : g.neighbors(v)) in_set[w] = 1;
        }
    std::vector<Vertex> kept;
    for (Vertex v = 0; v < n; ++v)
        if (in_set[v]) kept.push_back(v);
    Graph sub = g.induced(kept);

    // Peel vertices isolated inside the induced subgraph.
    std::vector<Vertex> alive;
    for (Vertex v = 0; v < sub.vertex_count(); ++v)
        if (sub.degree(v) > 0) alive.push_back(v);
    if (alive.size() != static_cast<size_t>(sub.vertex_count())) {
        std::vector<Vertex> composed;
        for (Vertex v : alive) composed.push_back(kept[v]);
        sub = sub.induced(alive);
        kept = std::move(composed);
    }

    RegularizeResult result;
    DegreeStats stats = degree_stats(sub);
    result.reported_K = BigRat(stats.max_deg, stats.min_deg);
    result.chosen_class = best_class;
    result.graph = std::move(sub);
    result.kept = std::move(kept);

    if (BigInt(result.graph.edge_count()) * 2 * ceil_log2(BigInt(n)) < BigInt(g.edge_count()))
        throw std::logic_error("regularize: retained-edge guarantee violated");
    return result;
}

HostConditionReport check_host_conditions(const Graph& g, const Density& alpha) {
    if (alpha.is_zero())
        throw std::invalid_argument("check_host_conditions: need alpha > 0");
    HostConditionReport rep;
    const BigInt n = g.vertex_count();
    const BigInt e = g.edge_count();

    rep.a = BigRat(e * e) >= alpha.squared() * BigRat(n * n * n);
    if (!rep.a) rep.detail += "(a) e(G) < alpha n^{3/2}; ";

    DegreeStats stats = g.vertex_count() > 0 ? degree_stats(g) : DegreeStats{};
    const BigInt delta_max = stats.max_deg;
    rep.b = BigRat(delta_max * delta_max) <= alpha.squared() * BigRat(BigInt(kHostK) * kHostK * n);
    if (!rep.b) rep.detail += "(b) Delta(G) > K alpha n^{1/2}; ";

    rep.c = true;
    const BigInt need_big = alpha.times_sqrt(n).ceil_value();
    const int64_t need = need_big > n + 1 ? g.vertex_count() + 1 : need_big.convert_to<int64_t>();
    const BigInt cmin_big = alpha.ceil_value();
    const int64_t cmin = cmin_big > g.vertex_count() ? g.vertex_count() + 1
                                                     : cmin_big.convert_to<int64_t>();
    for (Vertex u = 0; u < g.vertex_count() && rep.c; ++u) {
        for (Vertex v : g.neighbors(u)) {
            int64_t count = 0;
            for (Vertex w : g.neighbors(u)) {
                int64_t q = (w == v) ? g.degree(v) : g.codegree_raw(v, w);
                if (q >= cmin && ++count >= need) break;
            }
            if (count < need) {
                rep.c = false;
                rep.witness_c = {u, v};
                rep.detail += "(c) ordered edge (" + std::to_string(u) + "," + std::to_string(v) +
                              ") has too few qualifying neighbours; ";
                break;
            }
        }
    }
    return rep;
}

PrepareHostResult prepare_host(const Graph& g) {
    PrepareHostResult result;

    RegularizeResult reg = regularize(g);
    auto [cleaned, creport] = clean_subgraph(reg.graph);

    PreparedHost host;
    host.input_alpha = edge_density_alpha(g);
    host.alpha0 = edge_density_alpha(reg.graph);
    host.regularize_K = reg.reported_K;
    host.m = cleaned.vertex_count();
    host.alpha_prime = edge_density_alpha(cleaned);
    host.cleaning = std::move(creport);
    host.vertex_map = reg.kept; // cleaning keeps the vertex set

    // Paper chain: alpha0 >= (2/5) alpha and Delta(H) <= 16*640*(alpha0/8)*m^{1/2}.
    const bool chain_a = host.alpha0 >= host.input_alpha.scaled(BigRat(2, 5));
    DegreeStats stats = degree_stats(cleaned);
    const Density chain_bound = host.alpha0.scaled(BigRat(1280)).times_sqrt(host.m);
    const bool chain_b =
        BigRat(BigInt(stats.max_deg) * stats.max_deg) <= chain_bound.squared();
    host.paper_chain_achieved = chain_a && chain_b;

    HostConditionReport cond = check_host_conditions(cleaned, host.alpha_prime);
    if (!cond.all()) {
        PrepareHostFailure fail;
        fail.condition = !cond.a ? 'a' : (!cond.b ? 'b' : 'c');
        fail.witness = cond.detail;
        result.failure = fail;
        return result;
    }

    host.graph = std::move(cleaned);
    result.host = std::move(host);
    return result;
}

double jiang_seiver_K(double eps) {
    if (!(eps > 0.0 && eps < 1.0))
        throw std::invalid_argument("jiang_seiver_K: need 0 < eps < 1");
    return 20.0 * std::exp2(1.0 / (eps * eps) + 1.0);
}

} // namespace gridturan
