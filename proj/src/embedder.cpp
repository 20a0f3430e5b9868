#include "gridturan/embedder.hpp"

#include "gridturan/errors.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace gridturan {

TheoremParameters theorem_parameters(int r, int t, int64_t n) {
    if (r < 2 || t < 2 || n < 2)
        throw std::invalid_argument("theorem_parameters: need r >= 2, t >= 2, n >= 2");
    TheoremParameters p;
    p.r = r;
    p.t = t;
    p.alpha_log2 = static_cast<double>(r) * r * t * t * t * std::log2(16.0 * kHostK);
    const double rhs_factor = 4.0 * t * t * r * std::log2(static_cast<double>(n));
    int kk = 1;
    while (!(std::ldexp(1.0, kk) > kk * rhs_factor)) {
        if (++kk > 4096)
            throw std::logic_error("theorem_parameters: k_min search did not converge");
    }
    p.k_min = kk;
    return p;
}

namespace {

struct TupleKey {
    std::span<const Vertex> data;
};

struct TupleHash {
    size_t operator()(const std::vector<Vertex>& v) const {
        uint64_t h = 1469598103934665603ull;
        for (Vertex x : v) {
            h ^= static_cast<uint64_t>(static_cast<uint32_t>(x));
            h *= 1099511628211ull;
        }
        return static_cast<size_t>(h);
    }
};

} // namespace

AuxiliaryGraph build_auxiliary_graph(const TensorPowerView& view, const HarvestResult& harvest) {
    if (!harvest.ladders)
        throw std::invalid_argument("build_auxiliary_graph: harvest was not materialized");
    const LadderStore& store = *harvest.ladders;
    if (store.size() == 0)
        throw std::invalid_argument("build_auxiliary_graph: empty harvest");
    const int t = store.t();
    const int k = store.k();
    if (k != view.k())
        throw std::invalid_argument("build_auxiliary_graph: power mismatch");

    AuxiliaryGraph aux;
    aux.t = t;
    aux.k = k;
    aux.ladder_count = static_cast<int64_t>(store.size());

    std::unordered_map<std::vector<Vertex>, int, TupleHash> intern;
    intern.reserve(store.size() * 2);
    const size_t stride = static_cast<size_t>(t) * k;
    std::vector<Vertex> side(stride);
    auto tuple_id = [&](const std::vector<Vertex>& key) {
        auto [it, inserted] = intern.emplace(key, static_cast<int>(intern.size()));
        if (inserted) aux.tuples.insert(aux.tuples.end(), key.begin(), key.end());
        return it->second;
    };

    std::vector<Edge> edges;
    edges.reserve(store.size());
    for (size_t idx = 0; idx < store.size(); ++idx) {
        auto flat = store.at(idx);
        // x-side: entries 0, 2, 4, ...; y-side: entries 1, 3, 5, ...
        for (int i = 0; i < t; ++i)
            std::copy_n(flat.data() + (static_cast<size_t>(2) * i) * k, k,
                        side.begin() + static_cast<size_t>(i) * k);
        const int xid = tuple_id(side);
        for (int i = 0; i < t; ++i)
            std::copy_n(flat.data() + (static_cast<size_t>(2) * i + 1) * k, k,
                        side.begin() + static_cast<size_t>(i) * k);
        const int yid = tuple_id(side);
        edges.emplace_back(std::min(xid, yid), std::max(xid, yid));
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    const int nv = static_cast<int>(intern.size());
    aux.graph = Graph(nv, std::move(edges));

    if (BigInt(aux.graph.edge_count()) * 2 < aux.ladder_count)
        throw std::logic_error("build_auxiliary_graph: more than two ladders per edge");
    return aux;
}

bool is_tree(const Graph& g) {
    const int n = g.vertex_count();
    if (n == 0 || g.edge_count() != n - 1) return false;
    std::vector<char> seen(n, 0);
    std::vector<Vertex> stack{0};
    seen[0] = 1;
    int visited = 0;
    while (!stack.empty()) {
        Vertex v = stack.back();
        stack.pop_back();
        ++visited;
        for (Vertex w : g.neighbors(v))
            if (!seen[w]) {
                seen[w] = 1;
                stack.push_back(w);
            }
    }
    return visited == n;
}

std::vector<Vertex> one_degenerate_order(const Graph& tree) {
    if (!is_tree(tree))
        throw std::invalid_argument("one_degenerate_order: input is not a tree");
    const int n = tree.vertex_count();
    std::vector<int> deg(n);
    std::vector<char> removed(n, 0);
    for (Vertex v = 0; v < n; ++v) deg[v] = tree.degree(v);
    std::vector<Vertex> removal;
    for (int round = 0; round + 1 < n; ++round) {
        Vertex leaf = -1;
        for (Vertex v = 0; v < n; ++v)
            if (!removed[v] && deg[v] <= 1) { leaf = v; break; }
        removal.push_back(leaf);
        removed[leaf] = 1;
        for (Vertex w : tree.neighbors(leaf))
            if (!removed[w]) --deg[w];
    }
    for (Vertex v = 0; v < n; ++v)
        if (!removed[v]) removal.push_back(v);
    std::reverse(removal.begin(), removal.end());
    return removal;
}

bool verify_embedding(const Graph& g, const Graph& tree, int t, const Embedding& emb) {
    const int r = tree.vertex_count();
    if (emb.r != r || emb.t != t) return false;
    if (static_cast<int>(emb.assignment.size()) != r * t) return false;
    for (Vertex v : emb.assignment)
        if (!g.valid_vertex(v)) return false;

    std::vector<Vertex> sorted = emb.assignment;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;

    for (int p = 0; p < r; ++p)
        for (int i = 0; i + 1 < t; ++i)
            if (!g.has_edge(emb.at(p, i), emb.at(p, i + 1))) return false;

    for (const auto& [p, z] : tree.edges())
        for (int i = 0; i < t; ++i)
            if (!g.has_edge(emb.at(p, i), emb.at(z, i))) return false;
    return true;
}

namespace {

/// Coordinates shared between position l of tuple a and position i of tuple b.
int coordinate_collisions(std::span<const Vertex> a, std::span<const Vertex> b, int t, int k,
                          int l, int i) {
    int c = 0;
    for (int j = 0; j < k; ++j)
        if (a[static_cast<size_t>(l) * k + j] == b[static_cast<size_t>(i) * k + j]) ++c;
    return c;
}

bool suitable(const AuxiliaryGraph& aux, std::span<const Vertex> cand,
              const std::vector<int>& images, int placed, int budget) {
    for (int q = 0; q < placed; ++q) {
        auto other = aux.tuple(images[q]);
        for (int l = 0; l < aux.t; ++l)
            for (int i = 0; i < aux.t; ++i)
                if (coordinate_collisions(cand, other, aux.t, aux.k, l, i) > budget) return false;
    }
    return true;
}

} // namespace

const char* embed_stage_name(EmbedStage stage) {
    switch (stage) {
        case EmbedStage::PrepareHost: return "prepare-host";
        case EmbedStage::Harvest: return "harvest";
        case EmbedStage::BuildAuxiliary: return "build-auxiliary";
        case EmbedStage::Peel: return "peel";
        case EmbedStage::Greedy: return "greedy";
        case EmbedStage::CoordinateScan: return "coordinate-scan";
    }
    return "?";
}

EmbedResult embed_tree_product(const Graph& g, const Graph& tree, int t,
                               const EmbedWorking& working) {
    if (t < 1) throw std::invalid_argument("embed_tree_product: need t >= 1");
    if (!is_tree(tree) || tree.vertex_count() < 2)
        throw std::invalid_argument("embed_tree_product: T must be a tree on >= 2 vertices");
    if (working.k < 1) throw std::invalid_argument("embed_tree_product: need k >= 1");

    const int r = tree.vertex_count();
    const int k = working.k;
    const int budget = working.collision_budget.value_or(
        static_cast<int>((k + static_cast<int64_t>(r) * t * r * t - 1) /
                         (static_cast<int64_t>(r) * t * r * t)));

    EmbedResult result;
    auto fail = [&](EmbedStage stage, std::string detail) {
        EmbedFailure f;
        f.stage = stage;
        f.detail = std::move(detail);
        result.failure = std::move(f);
        return result;
    };

    // Stage 1: host preparation.
    PrepareHostResult prep = prepare_host(g);
    if (!prep.ok())
        return fail(EmbedStage::PrepareHost,
                    std::string("condition (") + prep.failure->condition + ") failed: " +
                        prep.failure->witness);
    const PreparedHost& host = *prep.host;
    result.audit.alpha_prime = host.alpha_prime;
    result.audit.host_m = host.m;

    TensorPowerView view = tensor_power(host.graph, k, TensorPowerView::Mode::Implicit);
    result.audit.host_conditions_hold = check_host_conditions(host.graph, working.alpha).all();

    // Stage 2: harvest.
    HarvestOptions hopts = working.harvest;
    hopts.materialize = true;
    HarvestResult harvest;
    try {
        harvest = harvest_good_ladders(view, t, working.alpha, hopts);
    } catch (const harvest_dead_end& e) {
        return fail(EmbedStage::Harvest,
                    "no good ladders at step " + std::to_string(e.step()) + ": " + e.what());
    }
    result.audit.ladder_count = harvest.count;
    if (harvest.count == 0)
        return fail(EmbedStage::Harvest, "harvest produced no good ladders");

    // Stage 3: auxiliary graph.
    AuxiliaryGraph aux = build_auxiliary_graph(view, harvest);
    result.audit.aux_vertices = aux.vertex_count();
    result.audit.aux_edges = aux.graph.edge_count();
    {
        DegreeStats hstats = degree_stats(host.graph);
        result.audit.paper_vertex_bound_log2 =
            k * std::log2(static_cast<double>(host.m)) +
            static_cast<double>(k) * (t - 1) * std::log2(std::max(1.0, static_cast<double>(hstats.max_deg)));
    }

    // Stage 4: peel at the fixed threshold dbar/2 = |E| / |V|.
    const BigRat threshold(BigInt(aux.graph.edge_count()), BigInt(aux.vertex_count()));
    result.audit.peel_threshold = threshold;
    PeelResult peeled = peel_min_degree(aux.graph, threshold);
    if (peeled.empty())
        return fail(EmbedStage::Peel, "auxiliary graph peeled to empty");
    result.audit.peeled_vertices = peeled.graph.vertex_count();
    {
        DegreeStats pstats = degree_stats(peeled.graph);
        result.audit.peeled_min_degree = BigRat(pstats.min_deg);
        result.audit.eq1_holds = BigRat(pstats.min_deg) >= threshold;
    }

    // Stage 5: greedy embedding of the tree, trying start vertices in
    // rotated canonical order.
    const std::vector<Vertex> order = one_degenerate_order(tree);
    std::vector<int> parent(r, -1); // index into `order` positions
    for (int p = 1; p < r; ++p) {
        for (int q = 0; q < p; ++q)
            if (tree.has_edge(order[p], order[q])) parent[p] = q;
        if (parent[p] < 0)
            throw std::logic_error("embed_tree_product: ordering is not 1-degenerate");
    }

    const int64_t nv = peeled.graph.vertex_count();
    EmbedFailure best_failure;
    best_failure.stage = EmbedStage::Greedy;
    int best_progress = -1;

    for (int64_t attempt = 0; attempt < nv; ++attempt) {
        const int start =
            static_cast<int>((attempt + static_cast<int64_t>(working.start_rotation % nv)) % nv);
        std::vector<int> images(r, -1); // per order position: aux tuple id
        images[0] = peeled.kept[start];
        bool dead = false;
        int64_t unsuitable = 0;
        int progress = 1;
        for (int p = 1; p < r && !dead; ++p) {
            const int zimg = images[parent[p]];
            // zimg is an aux id; scan its neighbours inside the peeled graph.
            const auto pos = std::lower_bound(peeled.kept.begin(), peeled.kept.end(), zimg);
            const int zpeeled = static_cast<int>(pos - peeled.kept.begin());
            int chosen = -1;
            for (Vertex nb : peeled.graph.neighbors(zpeeled)) {
                const int cand = peeled.kept[nb];
                if (suitable(aux, aux.tuple(cand), images, p, budget)) {
                    chosen = cand;
                    break;
                }
                ++unsuitable;
            }
            if (chosen < 0) {
                dead = true;
            } else {
                images[p] = chosen;
                ++progress;
            }
        }
        if (dead) {
            if (progress > best_progress) {
                best_progress = progress;
                best_failure = EmbedFailure{};
                best_failure.stage = EmbedStage::Greedy;
                best_failure.detail = "no collision-respecting neighbour while placing tree vertex " +
                                      std::to_string(order[progress]) + " (start offset " +
                                      std::to_string(attempt) + ")";
                best_failure.unsuitable_neighbours = unsuitable;
                best_failure.min_degree_peeled = result.audit.peeled_min_degree;
                best_failure.partial.assign(static_cast<size_t>(r) * t, -1);
                for (int p = 0; p < progress; ++p) {
                    auto tup = aux.tuple(images[p]);
                    for (int i = 0; i < t; ++i)
                        best_failure.partial[static_cast<size_t>(order[p]) * t + i] =
                            host.vertex_map[tup[static_cast<size_t>(i) * k]];
                }
            }
            continue;
        }

        // Stage 6: find a coordinate with all r*t images distinct.
        for (int j = 0; j < k; ++j) {
            std::vector<Vertex> vals;
            vals.reserve(static_cast<size_t>(r) * t);
            for (int p = 0; p < r; ++p) {
                auto tup = aux.tuple(images[p]);
                for (int i = 0; i < t; ++i) vals.push_back(tup[static_cast<size_t>(i) * k + j]);
            }
            std::vector<Vertex> sorted = vals;
            std::sort(sorted.begin(), sorted.end());
            if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) continue;

            Embedding emb;
            emb.r = r;
            emb.t = t;
            emb.k = k;
            emb.coordinate = j + 1;
            emb.assignment.assign(static_cast<size_t>(r) * t, -1);
            for (int p = 0; p < r; ++p)
                for (int i = 0; i < t; ++i)
                    emb.assignment[static_cast<size_t>(order[p]) * t + i] =
                        host.vertex_map[vals[static_cast<size_t>(p) * t + i]];
            if (!verify_embedding(g, tree, t, emb))
                throw std::logic_error("embed_tree_product: self-verification failed");
            result.embedding = std::move(emb);
            return result;
        }
        if (best_progress < r) {
            best_progress = r;
            best_failure = EmbedFailure{};
            best_failure.stage = EmbedStage::CoordinateScan;
            best_failure.detail = "tree embedded but no coordinate had all images distinct "
                                  "(start offset " + std::to_string(attempt) + ")";
            best_failure.min_degree_peeled = result.audit.peeled_min_degree;
        }
    }

    result.failure = std::move(best_failure);
    if (result.failure->detail.empty())
        result.failure->detail = "no start vertex led to an embedding";
    return result;
}

} // namespace gridturan
