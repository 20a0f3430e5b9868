#pragma once

#include "gridturan/cleaning.hpp"
#include "gridturan/generators.hpp"
#include "gridturan/graph.hpp"
#include "gridturan/ladders.hpp"

#include <optional>
#include <string>
#include <vector>

namespace gridturan {

/// The theorem's own parameters, for reporting only: they are astronomically
/// far beyond anything runnable, so the embedder takes caller-supplied
/// working parameters instead.
struct TheoremParameters {
    int r = 0;
    int t = 0;
    double alpha_log2 = 0.0; // log2 of (16K)^{r^2 t^3}, K = 12000
    int k_min = 0;           // least k with 2^k > k * 4 t^2 r * log2(n)
};

TheoremParameters theorem_parameters(int r, int t, int64_t n);

/// The auxiliary graph: vertices are the endpoint t-tuples occurring in the
/// harvested ladders (an implicit stand-in for the set of all coordinate-
/// distinct t-paths of the power graph, which is astronomically larger);
/// two tuples are joined when some interleaving of them is a harvested good
/// ladder. At most two ladders give the same edge, so e >= count/2.
struct AuxiliaryGraph {
    int t = 0;
    int k = 1;
    std::vector<Vertex> tuples; // vertex id -> t*k flattened tensor vertices
    Graph graph;
    BigInt ladder_count;

    int64_t vertex_count() const { return graph.vertex_count(); }
    std::span<const Vertex> tuple(int id) const {
        const size_t stride = static_cast<size_t>(t) * k;
        return {tuples.data() + id * stride, stride};
    }
};

AuxiliaryGraph build_auxiliary_graph(const TensorPowerView& view, const HarvestResult& harvest);

/// A verified placement of T box P_t: assignment[p*t + i] is the base-graph
/// vertex carrying tree vertex p at path position i, extracted from the
/// 1-based coordinate `coordinate` of the embedded tensor tuples.
struct Embedding {
    int r = 0;
    int t = 0;
    int k = 1;
    int coordinate = 1;
    std::vector<Vertex> assignment;

    Vertex at(int p, int i) const { return assignment[static_cast<size_t>(p) * t + i]; }
};

/// Checks the three embedding invariants directly against g: all r*t images
/// distinct, consecutive path positions adjacent, and equal positions
/// adjacent across every tree edge. Independent of the embedder's state.
bool verify_embedding(const Graph& g, const Graph& tree, int t, const Embedding& emb);

struct EmbedWorking {
    int k = 1;
    Density alpha;
    std::optional<int> collision_budget; // default ceil(k / (rt)^2)
    uint64_t start_rotation = 0;         // rotates the choice of the first image
    HarvestOptions harvest = {.materialize = true, .enforce_guarantees = false};
};

enum class EmbedStage { PrepareHost, Harvest, BuildAuxiliary, Peel, Greedy, CoordinateScan };

const char* embed_stage_name(EmbedStage stage);

struct EmbedFailure {
    EmbedStage stage;
    std::string detail;
    int64_t unsuitable_neighbours = -1; // greedy step failures, for the audit
    BigRat min_degree_peeled;
    std::vector<Vertex> partial; // partial assignment, -1 where unset
};

struct EmbedAudit {
    bool host_conditions_hold = false;
    Density alpha_prime;
    int host_m = 0;
    BigInt ladder_count;
    int64_t aux_vertices = 0;
    int64_t aux_edges = 0;
    BigRat peel_threshold;  // |E| / |V| of the materialized auxiliary graph
    BigRat peeled_min_degree;
    int64_t peeled_vertices = 0;
    bool eq1_holds = false; // delta(peeled) >= |E|/|V|
    double paper_vertex_bound_log2 = 0.0; // log2 of n^k Delta^{k(t-1)}
};

struct EmbedResult {
    std::optional<Embedding> embedding;
    std::optional<EmbedFailure> failure;
    EmbedAudit audit;
    bool ok() const { return embedding.has_value(); }
};

/// The whole pipeline: prepare_host, harvest good ladders in the k-th power
/// of the host, build and peel the auxiliary graph, then greedily embed the
/// tree one vertex at a time, accepting only neighbours whose coordinate
/// collisions with every earlier image stay within the collision budget, and
/// finally scan for a coordinate where all r*t images are distinct. Each
/// stage reports failure separately; a returned embedding has been
/// self-verified against the input graph.
EmbedResult embed_tree_product(const Graph& g, const Graph& tree, int t,
                               const EmbedWorking& working);

bool is_tree(const Graph& g);

/// Ordering by repeated lowest-id leaf removal, reversed: every vertex after
/// the first has exactly one earlier neighbour.
std::vector<Vertex> one_degenerate_order(const Graph& tree);

} // namespace gridturan
