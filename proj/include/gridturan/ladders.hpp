#pragma once

#include "gridturan/generators.hpp"
#include "gridturan/graph.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace gridturan {

/// A t-ladder: the 2t-tuple (x_1, y_1, x_2, y_2, ..., x_t, y_t) with
/// x_i x_{i+1}, y_i y_{i+1}, x_i y_i edges for i < t and x_t y_t an edge.
/// Entries are tensor vertices; t-ladders in the base graph have k = 1.
/// Entries need not be distinct: the tuple is a homomorphic image.
struct Ladder {
    int t = 0;
    int k = 1;
    std::vector<Vertex> data; // 2t*k values, entry e at data[e*k .. e*k+k)

    std::span<const Vertex> entry(int e) const { return {data.data() + static_cast<size_t>(e) * k, static_cast<size_t>(k)}; }
    std::span<const Vertex> x(int i) const { return entry(2 * (i - 1)); }     // x_i, 1-based
    std::span<const Vertex> y(int i) const { return entry(2 * (i - 1) + 1); } // y_i, 1-based
};

/// Goodness parameters: codegree caps s_1..s_{t-1} (>= 1) for the pairs
/// (x_{i+1}, y_i) in the power graph, a per-coordinate codegree floor alpha,
/// and per-coordinate distinctness of all 2t entries.
struct GoodLadderSpec {
    int t = 0;
    int k = 1;
    Density alpha;
    std::vector<double> s; // t-1 values; harvested specs hold exact powers of two
};

/// Flat storage for many ladders of one shape.
class LadderStore {
public:
    LadderStore(int t, int k) : t_(t), k_(k) {}

    size_t size() const { return count_; }
    int t() const { return t_; }
    int k() const { return k_; }

    std::span<const Vertex> at(size_t idx) const {
        return {data_.data() + idx * stride(), stride()};
    }
    Ladder ladder(size_t idx) const;
    void push(std::span<const Vertex> flat);

private:
    size_t stride() const { return static_cast<size_t>(2) * t_ * k_; }
    int t_, k_;
    size_t count_ = 0;
    std::vector<Vertex> data_;
};

struct HarvestStep {
    int step = 0;              // extension step i, 1-based
    double s = 0;              // chosen dyadic cap, a power of two
    int64_t tuples_before = 0; // x-extended tuples entering the pigeonhole
    int64_t tuples_kept = 0;   // tuples in the selected bucket
    bool retention_ok = false; // kept * ceil(log2 n^k) >= before
    bool fresh_half_ok = true; // every y-choice count matched the half-per-coordinate bound
    bool s_ge_alpha = false;
    bool s_ge_alpha_pow_k = false;
};

struct HarvestResult {
    GoodLadderSpec spec; // with the discovered s values
    BigInt count;        // exact number of harvested good ladders
    std::optional<LadderStore> ladders;
    std::vector<HarvestStep> step_log;
    bool guarantees_enforced = false;
    double count_lower_bound = 0.0; // alpha^{tk} n^{(t/2+1)k} prod s_i / (4^{k+1} log2 n^k)^{t-1}
    bool count_bound_met = false;
};

struct HarvestOptions {
    bool materialize = false;
    /// Strict mode requires alpha >= 4t and treats a pigeonhole retention or
    /// freshness shortfall as a logic error; relaxed mode (used with working
    /// parameters below the proof regime) records the flags instead.
    bool enforce_guarantees = true;
    uint64_t max_tuple_visits = 400'000'000;
    uint64_t max_stored_tuples = 40'000'000;
    int threads = 1;
};

/// The harvest ran out of extensions at some step: the host admits no good
/// ladder continuation. A legitimate "nothing there" outcome, not an error.
class harvest_dead_end : public std::runtime_error {
public:
    harvest_dead_end(int step, const std::string& what)
        : std::runtime_error(what), step_(step) {}
    int step() const { return step_; }

private:
    int step_;
};

struct EnumerationOptions {
    uint64_t max_nodes = 400'000'000;
};

/// Brute-force oracle (k = 1): every 2t-tuple realizing the ladder pattern,
/// in lexicographic tuple order. With distinct = true only tuples whose 2t
/// entries are pairwise distinct are kept.
std::vector<Ladder> enumerate_ladders(const Graph& g, int t, bool distinct,
                                      const EnumerationOptions& opts = {});

/// Number of (non-distinct) t-ladders by the same backtracking walk, without
/// storing them.
BigInt count_ladders(const Graph& g, int t, const EnumerationOptions& opts = {});

/// Number of t-ladders in G^k, computed as count_ladders(G, t)^k via the
/// product structure of the power graph -- never by enumerating G^k.
BigInt count_ladders_tensor(const Graph& g, int k, int t, const EnumerationOptions& opts = {});

/// True iff L realizes the ladder pattern in the power graph and satisfies
/// all three goodness bullets: d_{G^k}(x_{i+1}, y_i) <= s_i, per-coordinate
/// d_G(x_{i+1}(j), y_i(j)) >= alpha, and per-coordinate distinctness of all
/// 2t entries. Exact arithmetic throughout (s_i doubles are dyadic, hence
/// exact rationals).
bool is_good_ladder(const TensorPowerView& view, const Ladder& ladder, const GoodLadderSpec& spec);

/// The inductive good-ladder construction: starting from adjacent pairs,
/// alternately extend the x-side over fresh neighbours with per-coordinate
/// codegree >= alpha, keep the largest dyadic codegree bucket (recording
/// s_i and the retained fraction), and extend the y-side over fresh common
/// neighbours. Count-only mode streams the working set and never stores
/// tuples; materialize mode returns the ladders themselves.
HarvestResult harvest_good_ladders(const TensorPowerView& view, int t, const Density& alpha,
                                   const HarvestOptions& opts = {});

enum class FixedSide { X, Y };

/// Exhaustively counts good-ladder completions of a fixed side in which the
/// free side's ell-th entry is pinned to `pins[j]` on each coordinate j in J.
/// `fixed` holds the t fixed tensor vertices flattened (t*k values).
BigInt count_constrained_extensions(const TensorPowerView& view, const GoodLadderSpec& spec,
                                    std::span<const Vertex> fixed, FixedSide side, int ell,
                                    const std::vector<int>& coords_j, const std::vector<Vertex>& pins,
                                    const EnumerationOptions& opts = {});

/// count <= Delta(G)^k * prod s_i * alpha^{-|J|}, exactly.
bool extension_bound_holds(const BigInt& count, const TensorPowerView& view,
                           const GoodLadderSpec& spec, size_t j_size);

/// (x_1, y_1, ..., x_t, y_t) -> (y_t, x_t, ..., y_1, x_1). An involution; a
/// (s_1, ..., s_{t-1})-good ladder reverses to an (s_{t-1}, ..., s_1)-good one.
Ladder reverse_ladder(const Ladder& ladder);

} // namespace gridturan
