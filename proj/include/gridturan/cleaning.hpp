#pragma once

#include "gridturan/graph.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace gridturan {

/// One deletion event. Type 1 removes every edge incident to `u` (v unused);
/// type 2 removes the single edge {u, v}, recorded in the orientation (u, v)
/// whose endpoint u lacked qualifying neighbours.
struct CleaningStep {
    enum class Kind { Type1, Type2 };
    Kind kind;
    Vertex u = -1;
    Vertex v = -1;
    int edges_removed = 0;
};

struct CleaningReport {
    std::vector<CleaningStep> log; // chronological, replayable
    Density input_alpha;           // e(G) / n^{3/2} of the input
    int64_t input_edges = 0;
    int64_t output_edges = 0;

    int64_t type1_count() const;
    int64_t type2_count() const;
    int64_t edges_removed() const { return input_edges - output_edges; }
};

/// Which violating vertex/edge to delete when several qualify. The cleaning
/// guarantees hold for any order; LowestFirst is the canonical reproducible
/// choice and Seeded exists so tests can confirm order independence.
enum class DeletionOrder { LowestFirst, Seeded };

/// The two-phase deletion procedure. With alpha = e(G)/n^{3/2} fixed from the
/// input, repeatedly: delete all edges at a vertex u with
/// 1 <= deg(u) <= alpha n^{1/2}/4 (type 1); only when no such vertex exists,
/// delete an edge {u, v} some orientation of which gives u fewer than
/// alpha n^{1/2}/8 neighbours w with d(v, w) >= alpha^2/32 (type 2), where
/// w = v is admissible with d(v, v) = deg(v). Stops when neither applies.
/// The output keeps the full vertex set and satisfies, with the input alpha:
/// e(H) >= alpha n^{3/2}/2, the per-edge neighbour condition in both
/// orientations, and every degree 0 or > alpha n^{1/2}/4. All comparisons are
/// exact integer arithmetic.
std::pair<Graph, CleaningReport> clean_subgraph(const Graph& g,
                                                DeletionOrder order = DeletionOrder::LowestFirst,
                                                uint64_t seed = 0);

/// Applies a cleaning log to the graph it was produced from.
Graph replay_cleaning(const Graph& g, const CleaningReport& report);

struct CleaningPostcheck {
    bool edge_bound = false;       // e(H) >= alpha n^{3/2} / 2
    bool per_edge_condition = false;
    bool degree_condition = false; // every degree 0 or > alpha n^{1/2} / 4
    bool type2_bound = false;      // type-2 deletions <= alpha n^{3/2} / 4
    bool all() const { return edge_bound && per_edge_condition && degree_condition && type2_bound; }
};

/// Re-derives every clean_subgraph postcondition from scratch (exact
/// arithmetic), using the *input*'s alpha.
CleaningPostcheck check_cleaning_postconditions(const Graph& input, const Graph& output,
                                                const CleaningReport& report);

struct RegularizeResult {
    Graph graph;               // induced subgraph, relabeled dense
    std::vector<Vertex> kept;  // result id -> input id
    BigRat reported_K;         // Delta(H) / delta(H) of the output
    int chosen_class = 0;      // dyadic class index: degrees in [2^i, 2^{i+1})
};

/// Dyadic degree-class regularization: split vertices of positive degree into
/// classes [2^i, 2^{i+1}), take the class whose induced-incident subgraph
/// (the subgraph induced on the class plus its neighbourhood) retains the
/// most edges, drop isolated vertices, and report the achieved degree ratio.
/// Guarantees e(H) >= e(G) / (2 ceil(log2 n)) and delta(H) >= 1.
RegularizeResult regularize(const Graph& g);

struct HostConditionReport {
    bool a = false; // e(G) >= alpha n^{3/2}
    bool b = false; // Delta(G) <= K alpha n^{1/2}, K = 12000
    bool c = false; // each ordered edge (u,v): >= alpha n^{1/2} neighbours w of u
                    // with d(v, w) >= alpha (w = v admissible, d(v,v) = deg(v))
    std::optional<std::pair<Vertex, Vertex>> witness_c; // first failing ordered edge
    std::string detail;
    bool all() const { return a && b && c; }
};

constexpr int kHostK = 12000;

HostConditionReport check_host_conditions(const Graph& g, const Density& alpha);

struct PreparedHost {
    Graph graph;
    std::vector<Vertex> vertex_map; // host id -> id in the original input graph
    Density alpha_prime;            // achieved density e(H) / m^{3/2}
    int K = kHostK;
    int m = 0;

    // Audit trail.
    Density input_alpha;
    Density alpha0; // density of the regularized graph
    BigRat regularize_K;
    bool paper_chain_achieved = false; // alpha0 >= 2/5 alpha and Delta <= 16*640*(alpha0/8)*m^{1/2}
    CleaningReport cleaning;
};

struct PrepareHostFailure {
    char condition = '?'; // 'a', 'b' or 'c'
    std::string witness;
};

struct PrepareHostResult {
    std::optional<PreparedHost> host;
    std::optional<PrepareHostFailure> failure;
    bool ok() const { return host.has_value(); }
};

/// regularize, then clean_subgraph, then certify: alpha' is the achieved
/// density of the cleaned host and all three host conditions are re-verified
/// for (alpha', K = 12000). A verification failure names the violated
/// condition with a witness instead of returning a host.
PrepareHostResult prepare_host(const Graph& g);

/// K = 20 * 2^{1/eps^2 + 1}; 640 at eps = 1/2.
double jiang_seiver_K(double eps);

} // namespace gridturan
