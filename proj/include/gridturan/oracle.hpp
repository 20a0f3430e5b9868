#pragma once

#include "gridturan/graph.hpp"

#include <chrono>
#include <cstdint>
#include <optional>
#include <vector>

namespace gridturan {

struct SubgraphSearchOptions {
    uint64_t max_nodes = 200'000'000; // backtracking node budget
};

/// Exhaustive backtracking search for a (not necessarily induced) copy of H
/// in G: an injective map V(H) -> V(G) sending H-edges to G-edges. Returns
/// the witness map (re-verified before returning) or nullopt after an
/// exhaustive search. The variable ordering anchors on a lowest-degree-first
/// choice, extending along H-edges; candidates are pruned by degree and by
/// adjacency to already-placed neighbours. Throws resource_error when the
/// node budget runs out, which is distinct from "no copy".
std::optional<std::vector<Vertex>> contains_subgraph(const Graph& g, const Graph& h,
                                                     const SubgraphSearchOptions& opts = {});

struct TuranResult {
    int value = 0;         // max edges found; exact iff `exact`
    Graph witness;         // one extremal (or best-so-far) H-free graph
    bool exact = true;     // false when the time budget expired first
};

/// Exact Turan number ex(n, H) by depth-first search over the C(n,2) vertex
/// pairs in lexicographic order, include-branch first. Every include is
/// pruned immediately unless it keeps the graph H-free (checked through the
/// new edge only), and branches that cannot beat the incumbent edge count are
/// cut. Ties between extremal witnesses keep the lexicographically smallest
/// edge list. The witness is re-verified H-free with contains_subgraph.
TuranResult turan_number(int n, const Graph& forbidden,
                         std::chrono::duration<double> budget = std::chrono::hours(1));

/// One diagonal per unit square of a t x t grid of points, row-major over
/// squares; true = "/" (bottom-left to top-right), false = "\".
struct DiagonalAssignment {
    int t = 0;
    std::vector<bool> bits; // (t-1)^2 entries

    static DiagonalAssignment from_bits(int t, uint64_t mask);
};

struct CrossingPath {
    enum class Direction { LeftRight, TopBottom };
    Direction direction;
    std::vector<std::pair<int, int>> points; // (row, col) along the path
};

/// Finds a path along the chosen diagonals joining two opposite sides of the
/// grid (left-right is tried first, then top-bottom). Such a path always
/// exists and spans at least t grid points; failing to find one is an
/// invariant violation and aborts with the assignment echoed.
CrossingPath diagonal_crossing(const DiagonalAssignment& assign);

struct LowerBoundReport {
    int q = 0;
    int t = 0;
    bool base_c4_free = false;
    int64_t blowup_n = 0;
    int64_t blowup_edges = 0;
    enum class Freeness { Free, NotFree, Unchecked } ft_free = Freeness::Unchecked;
    double c_achieved = 0.0; // e / (t^{1/2} n^{3/2})
};

/// Builds the (t-1)-blowup of the polarity graph of PG(2, q), checks the base
/// for C4-freeness and the blowup for F_t-freeness with the subgraph oracle
/// (marked Unchecked if the search budget runs out -- never guessed), and
/// reports the achieved density coefficient.
LowerBoundReport verify_lower_bound_construction(int q, int t,
                                                 const SubgraphSearchOptions& opts = {});

} // namespace gridturan
