#include "gridturan/ladders.hpp"

#include "gridturan/errors.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstring>
#include <functional>
#include <thread>

namespace gridturan {

namespace {

using u128 = unsigned __int128;

BigInt u128_to_big(u128 v) {
    BigInt hi = static_cast<uint64_t>(v >> 64);
    return (hi << 64) + static_cast<uint64_t>(v);
}

/// Accumulates u128 summands into a BigInt without a BigInt op per addition.
struct BigAccumulator {
    u128 small = 0;
    BigInt big = 0;

    void add(u128 v) {
        if (small > ~u128{0} - v) {
            big += u128_to_big(small);
            small = 0;
        }
        small += v;
    }
    BigInt total() const { return big + u128_to_big(small); }
};

int ceil_log2_u128(u128 d) {
    int b = 0;
    u128 p = 1;
    while (p < d) {
        p <<= 1;
        ++b;
    }
    return b;
}

/// Fork-join over contiguous chunks of [0, total); exceptions from workers
/// are rethrown (first one wins) after every worker joined.
void run_chunks(int64_t total, int threads, const std::function<void(int64_t, int64_t, int)>& fn) {
    const int T = std::max<int64_t>(1, std::min<int64_t>(threads, total));
    if (T == 1) {
        fn(0, total, 0);
        return;
    }
    std::vector<std::exception_ptr> errors(T);
    std::vector<std::thread> pool;
    pool.reserve(T);
    for (int tid = 0; tid < T; ++tid) {
        int64_t lo = total * tid / T;
        int64_t hi = total * (tid + 1) / T;
        pool.emplace_back([&, lo, hi, tid]() {
            try {
                fn(lo, hi, tid);
            } catch (...) {
                errors[tid] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& err : errors)
        if (err) std::rethrow_exception(err);
}

// ---------------------------------------------------------------------------
// Brute-force ladder enumeration in the base graph (k = 1).

struct LadderWalker {
    const Graph& g;
    int t;
    bool distinct;
    uint64_t budget;
    uint64_t nodes = 0;
    std::vector<Vertex> buf; // entries so far: x1,y1,x2,y2,...
    std::vector<char> used;
    std::vector<Ladder>* out = nullptr; // nullptr => count only
    BigInt count = 0;

    LadderWalker(const Graph& g_, int t_, bool distinct_, uint64_t budget_)
        : g(g_), t(t_), distinct(distinct_), budget(budget_), used(g_.vertex_count(), 0) {}

    void emit() {
        if (out) {
            Ladder l;
            l.t = t;
            l.k = 1;
            l.data = buf;
            out->push_back(std::move(l));
        } else {
            ++count;
        }
    }

    void place(Vertex v) {
        if (++nodes > budget) throw resource_error("ladder enumeration: node budget exceeded");
        buf.push_back(v);
        if (distinct) used[v] = 1;
        step();
        if (distinct) used[v] = 0;
        buf.pop_back();
    }

    void step() {
        const int e = static_cast<int>(buf.size());
        if (e == 2 * t) {
            emit();
            return;
        }
        if (e == 0) {
            for (Vertex v = 0; v < g.vertex_count(); ++v) place(v);
        } else if (e % 2 == 1) {
            // y_{i+1}: common neighbour of y_i (entry e-2, absent when e == 1)
            // and x_{i+1} (entry e-1).
            if (e == 1) {
                for (Vertex v : g.neighbors(buf[0]))
                    if (!distinct || !used[v]) place(v);
            } else {
                auto a = g.neighbors(buf[e - 2]);
                auto b = g.neighbors(buf[e - 1]);
                size_t i = 0, j = 0;
                while (i < a.size() && j < b.size()) {
                    if (a[i] < b[j]) ++i;
                    else if (a[i] > b[j]) ++j;
                    else {
                        if (!distinct || !used[a[i]]) place(a[i]);
                        ++i; ++j;
                    }
                }
            }
        } else {
            // x_{i+1}: neighbour of x_i (entry e-2).
            for (Vertex v : g.neighbors(buf[e - 2]))
                if (!distinct || !used[v]) place(v);
        }
    }
};

} // namespace

void LadderStore::push(std::span<const Vertex> flat) {
    data_.insert(data_.end(), flat.begin(), flat.end());
    ++count_;
}

Ladder LadderStore::ladder(size_t idx) const {
    Ladder l;
    l.t = t_;
    l.k = k_;
    auto s = at(idx);
    l.data.assign(s.begin(), s.end());
    return l;
}

std::vector<Ladder> enumerate_ladders(const Graph& g, int t, bool distinct,
                                      const EnumerationOptions& opts) {
    if (t < 1) throw std::invalid_argument("enumerate_ladders: need t >= 1");
    std::vector<Ladder> out;
    LadderWalker walker(g, t, distinct, opts.max_nodes);
    walker.out = &out;
    walker.step();
    return out;
}

BigInt count_ladders(const Graph& g, int t, const EnumerationOptions& opts) {
    if (t < 1) throw std::invalid_argument("count_ladders: need t >= 1");
    LadderWalker walker(g, t, false, opts.max_nodes);
    walker.step();
    return walker.count;
}

BigInt count_ladders_tensor(const Graph& g, int k, int t, const EnumerationOptions& opts) {
    if (k < 1) throw std::invalid_argument("count_ladders_tensor: need k >= 1");
    BigInt base = count_ladders(g, t, opts);
    BigInt total = 1;
    for (int i = 0; i < k; ++i) total *= base;
    return total;
}

namespace {

void validate_spec(const GoodLadderSpec& spec) {
    if (spec.t < 1 || spec.k < 1)
        throw std::invalid_argument("GoodLadderSpec: need t >= 1, k >= 1");
    if (static_cast<int>(spec.s.size()) != spec.t - 1)
        throw std::invalid_argument("GoodLadderSpec: need exactly t-1 codegree caps");
    for (double s : spec.s)
        if (!(s >= 1.0))
            throw std::invalid_argument("GoodLadderSpec: caps must be >= 1");
    if (spec.alpha.is_zero())
        throw std::invalid_argument("GoodLadderSpec: need alpha > 0");
}

} // namespace

bool is_good_ladder(const TensorPowerView& view, const Ladder& ladder, const GoodLadderSpec& spec) {
    validate_spec(spec);
    if (ladder.k != view.k() || spec.k != view.k())
        throw std::invalid_argument("is_good_ladder: power mismatch between ladder, spec and view");
    if (ladder.t != spec.t)
        throw std::invalid_argument("is_good_ladder: ladder length does not match spec");
    const int t = ladder.t;
    const int k = ladder.k;
    const Graph& g = view.base();
    for (int e = 0; e < 2 * t; ++e)
        for (Vertex v : ladder.entry(e))
            if (!g.valid_vertex(v))
                throw std::invalid_argument("is_good_ladder: vertex out of range");

    // Ladder pattern.
    for (int i = 1; i <= t - 1; ++i) {
        if (!view.adjacent(ladder.x(i), ladder.x(i + 1))) return false;
        if (!view.adjacent(ladder.y(i), ladder.y(i + 1))) return false;
        if (!view.adjacent(ladder.x(i), ladder.y(i))) return false;
    }
    if (!view.adjacent(ladder.x(t), ladder.y(t))) return false;

    // (1) dyadic caps and (2) per-coordinate codegree floor.
    for (int i = 1; i <= t - 1; ++i) {
        BigInt d = view.tensor_codegree(ladder.x(i + 1), ladder.y(i));
        if (BigRat(d) > BigRat(spec.s[i - 1])) return false;
        for (int j = 0; j < k; ++j) {
            int c = g.codegree_raw(ladder.x(i + 1)[j], ladder.y(i)[j]);
            if (!count_at_least(BigInt(c), spec.alpha)) return false;
        }
    }

    // (3) per-coordinate distinctness of all 2t entries.
    std::vector<Vertex> vals(2 * t);
    for (int j = 0; j < k; ++j) {
        for (int e = 0; e < 2 * t; ++e) vals[e] = ladder.entry(e)[j];
        std::sort(vals.begin(), vals.end());
        if (std::adjacent_find(vals.begin(), vals.end()) != vals.end()) return false;
    }
    return true;
}

Ladder reverse_ladder(const Ladder& ladder) {
    Ladder r;
    r.t = ladder.t;
    r.k = ladder.k;
    r.data.reserve(ladder.data.size());
    for (int i = ladder.t; i >= 1; --i) {
        auto y = ladder.y(i);
        auto x = ladder.x(i);
        r.data.insert(r.data.end(), y.begin(), y.end());
        r.data.insert(r.data.end(), x.begin(), x.end());
    }
    return r;
}

// ---------------------------------------------------------------------------
// Harvest engine.

namespace {

struct XCandidate {
    Vertex w;
    int codeg; // d_G(w, y_prev(j))
};

/// Shared read-only context plus global accounting for one harvest run.
struct HarvestContext {
    const TensorPowerView& view;
    const Graph& g;
    int k;
    int t;
    int cmin; // per-coordinate codegree floor, ceil(alpha) clamped
    std::vector<int> bucket_exp; // chosen dyadic exponents for completed steps
    uint64_t max_visits;
    std::atomic<uint64_t> visits{0};
    std::atomic<bool> fresh_half_violated{false};
    std::vector<Vertex> x1_universe; // vertices of positive degree

    HarvestContext(const TensorPowerView& v, int t_, const Density& alpha, uint64_t budget)
        : view(v), g(v.base()), k(v.k()), t(t_), max_visits(budget) {
        BigInt c = alpha.ceil_value();
        cmin = c > g.vertex_count() ? g.vertex_count() + 1 : c.convert_to<int>();
        cmin = std::max(cmin, 1); // codegrees inside good ladders are positive
        for (Vertex v0 = 0; v0 < g.vertex_count(); ++v0)
            if (g.degree(v0) > 0) x1_universe.push_back(v0);
        if (g.vertex_count() >= 2 &&
            static_cast<int64_t>(k) * ceil_log2(BigInt(g.vertex_count())) > 120)
            throw resource_error("harvest_good_ladders: tensor codegree range exceeds 128 bits");
    }
};

/// Per-thread walker over partial tuples. buf holds the current tuple
/// (entries x1,y1,x2,y2,... with k coordinates each); candidate scratch is
/// per entry index so that nested extension levels do not clobber each other.
struct Walker {
    HarvestContext& ctx;
    std::vector<Vertex> buf;
    std::vector<std::vector<std::vector<XCandidate>>> xcs; // [entry][j]
    std::vector<std::vector<std::vector<Vertex>>> ycs;     // [entry][j]
    uint64_t local_visits = 0;

    explicit Walker(HarvestContext& c)
        : ctx(c), xcs(2 * c.t + 2, std::vector<std::vector<XCandidate>>(c.k)),
          ycs(2 * c.t + 2, std::vector<std::vector<Vertex>>(c.k)) {
        buf.reserve(static_cast<size_t>(2) * c.t * c.k);
    }

    int entries() const { return static_cast<int>(buf.size()) / ctx.k; }
    Vertex coord(int e, int j) const { return buf[static_cast<size_t>(e) * ctx.k + j]; }

    bool fresh(Vertex v, int j, int upto) const {
        for (int e = 0; e < upto; ++e)
            if (coord(e, j) == v) return false;
        return true;
    }

    void charge(uint64_t n) {
        local_visits += n;
        if (local_visits >= 4096) flush_charge();
    }
    void flush_charge() {
        if (ctx.visits.fetch_add(local_visits, std::memory_order_relaxed) + local_visits >
            ctx.max_visits)
            throw resource_error("harvest_good_ladders: tuple-visit budget exceeded");
        local_visits = 0;
    }

    /// Candidates for entry L = 2i (x_{i+1}): fresh neighbours of x_i with
    /// codegree to y_i at least the per-coordinate floor.
    bool compute_x_candidates() {
        const int L = entries();
        for (int j = 0; j < ctx.k; ++j) {
            auto& list = xcs[L][j];
            list.clear();
            const Vertex px = coord(L - 2, j);
            const Vertex py = coord(L - 1, j);
            for (Vertex w : ctx.g.neighbors(px)) {
                if (!fresh(w, j, L)) continue;
                int c = ctx.g.codegree_raw(w, py);
                if (c >= ctx.cmin) list.push_back({w, c});
            }
            if (list.empty()) return false;
        }
        return true;
    }

    /// Candidates for entry L = 2i+1 (y_{i+1}): fresh common neighbours of
    /// x_{i+1} and y_i. Also audits the half-per-coordinate freshness bound.
    bool compute_y_candidates() {
        const int L = entries();
        for (int j = 0; j < ctx.k; ++j) {
            auto& list = ycs[L][j];
            list.clear();
            const Vertex xn = coord(L - 1, j);
            const Vertex yp = coord(L - 2, j);
            int common = 0;
            if (ctx.g.has_bitset()) {
                const uint64_t* a = ctx.g.adjacency_row(xn);
                const uint64_t* b = ctx.g.adjacency_row(yp);
                for (int w = 0; w < ctx.g.row_words(); ++w) {
                    uint64_t both = a[w] & b[w];
                    common += std::popcount(both);
                    while (both) {
                        int bit = std::countr_zero(both);
                        both &= both - 1;
                        Vertex v = static_cast<Vertex>(w * 64 + bit);
                        if (fresh(v, j, L)) list.push_back(v);
                    }
                }
            } else {
                auto a = ctx.g.neighbors(xn);
                auto b = ctx.g.neighbors(yp);
                size_t ia = 0, ib = 0;
                while (ia < a.size() && ib < b.size()) {
                    if (a[ia] < b[ib]) ++ia;
                    else if (a[ia] > b[ib]) ++ib;
                    else {
                        ++common;
                        if (fresh(a[ia], j, L)) list.push_back(a[ia]);
                        ++ia; ++ib;
                    }
                }
            }
            if (2 * static_cast<int>(list.size()) < common)
                ctx.fresh_half_violated.store(true, std::memory_order_relaxed);
            if (list.empty()) return false;
        }
        return true;
    }

    /// Count of fresh y-choices without materializing the candidate lists;
    /// used for the closing arithmetic step of count-only harvests.
    u128 count_y_choices() {
        const int L = entries();
        u128 total = 1;
        for (int j = 0; j < ctx.k; ++j) {
            const Vertex xn = coord(L - 1, j);
            const Vertex yp = coord(L - 2, j);
            int common = 0;
            int fresh_count = 0;
            if (ctx.g.has_bitset()) {
                const uint64_t* a = ctx.g.adjacency_row(xn);
                const uint64_t* b = ctx.g.adjacency_row(yp);
                for (int w = 0; w < ctx.g.row_words(); ++w) common += std::popcount(a[w] & b[w]);
                fresh_count = common;
                for (int e = 0; e < L; ++e) {
                    Vertex v = coord(e, j);
                    if (ctx.g.has_edge(xn, v) && ctx.g.has_edge(yp, v)) --fresh_count;
                }
            } else {
                auto a = ctx.g.neighbors(xn);
                auto b = ctx.g.neighbors(yp);
                size_t ia = 0, ib = 0;
                while (ia < a.size() && ib < b.size()) {
                    if (a[ia] < b[ib]) ++ia;
                    else if (a[ia] > b[ib]) ++ib;
                    else {
                        ++common;
                        if (fresh(a[ia], j, L)) ++fresh_count;
                        ++ia; ++ib;
                    }
                }
            }
            if (2 * fresh_count < common)
                ctx.fresh_half_violated.store(true, std::memory_order_relaxed);
            if (fresh_count == 0) return 0;
            total *= static_cast<unsigned>(fresh_count);
        }
        return total;
    }

    template <class F>
    void for_each_x(F&& f) {
        const int L = entries();
        buf.resize(static_cast<size_t>(L + 1) * ctx.k);
        std::vector<int> pick(ctx.k, 0);
        for (;;) {
            u128 d = 1;
            for (int j = 0; j < ctx.k; ++j) {
                const XCandidate& c = xcs[L][j][pick[j]];
                buf[static_cast<size_t>(L) * ctx.k + j] = c.w;
                d *= static_cast<unsigned>(c.codeg);
            }
            charge(1);
            f(d);
            int j = ctx.k - 1;
            while (j >= 0 && ++pick[j] == static_cast<int>(xcs[L][j].size())) { pick[j] = 0; --j; }
            if (j < 0) break;
        }
        buf.resize(static_cast<size_t>(L) * ctx.k);
    }

    template <class F>
    void for_each_y(F&& f) {
        const int L = entries();
        buf.resize(static_cast<size_t>(L + 1) * ctx.k);
        std::vector<int> pick(ctx.k, 0);
        for (;;) {
            for (int j = 0; j < ctx.k; ++j)
                buf[static_cast<size_t>(L) * ctx.k + j] = ycs[L][j][pick[j]];
            charge(1);
            f();
            int j = ctx.k - 1;
            while (j >= 0 && ++pick[j] == static_cast<int>(ycs[L][j].size())) { pick[j] = 0; --j; }
            if (j < 0) break;
        }
        buf.resize(static_cast<size_t>(L) * ctx.k);
    }

    /// All adjacent pairs (x1, y1) whose x1 has its first coordinate in the
    /// given slice of the positive-degree universe. Self-contained scratch.
    template <class F>
    void for_each_pair(int64_t lo, int64_t hi, F&& f) {
        std::vector<Vertex> x1(ctx.k);
        std::function<void(int)> rec = [&](int j) {
            if (j == ctx.k) {
                buf.assign(x1.begin(), x1.end());
                buf.resize(static_cast<size_t>(2) * ctx.k);
                std::vector<int> pick(ctx.k, 0);
                for (;;) {
                    for (int jj = 0; jj < ctx.k; ++jj)
                        buf[static_cast<size_t>(ctx.k) + jj] = ctx.g.neighbors(x1[jj])[pick[jj]];
                    charge(1);
                    f();
                    int jj = ctx.k - 1;
                    while (jj >= 0 && ++pick[jj] == ctx.g.degree(x1[jj])) { pick[jj] = 0; --jj; }
                    if (jj < 0) break;
                }
                buf.clear();
                return;
            }
            int64_t from = (j == 0) ? lo : 0;
            int64_t to = (j == 0) ? hi : static_cast<int64_t>(ctx.x1_universe.size());
            for (int64_t idx = from; idx < to; ++idx) {
                x1[j] = ctx.x1_universe[idx];
                rec(j + 1);
            }
        };
        rec(0);
    }

    /// Walks every completed prefix with `rungs` rungs, honoring the buckets
    /// chosen so far, restricted to the given top-level slice. Type-erased
    /// callback: the nesting depth is a runtime quantity.
    void walk(int rungs, int64_t lo, int64_t hi, const std::function<void()>& f) {
        if (rungs == 1) {
            for_each_pair(lo, hi, f);
            return;
        }
        walk(rungs - 1, lo, hi, [&]() {
            if (!compute_x_candidates()) return;
            for_each_x([&](u128 d) {
                if (ceil_log2_u128(d) != ctx.bucket_exp[rungs - 2]) return;
                if (!compute_y_candidates()) return;
                for_each_y(f);
            });
        });
    }
};

struct StepScan {
    std::array<int64_t, 160> hist{};
};

HarvestStep make_step_log(int step, int best_b, int64_t before, int64_t kept, int log_nk,
                          const Density& alpha, int k) {
    HarvestStep slog;
    slog.step = step;
    slog.s = std::ldexp(1.0, best_b);
    slog.tuples_before = before;
    slog.tuples_kept = kept;
    slog.retention_ok = BigInt(kept) * log_nk >= BigInt(before);
    const Density s_val = Density::from_ratio(int_pow(2, static_cast<unsigned>(best_b)), 1);
    slog.s_ge_alpha = s_val >= alpha;
    slog.s_ge_alpha_pow_k = s_val >= alpha.pow(static_cast<unsigned>(k));
    return slog;
}

} // namespace

HarvestResult harvest_good_ladders(const TensorPowerView& view, int t, const Density& alpha,
                                   const HarvestOptions& opts) {
    if (t < 1) throw std::invalid_argument("harvest_good_ladders: need t >= 1");
    if (alpha.is_zero()) throw std::invalid_argument("harvest_good_ladders: need alpha > 0");
    if (opts.enforce_guarantees && alpha < Density::from_ratio(BigInt(4) * t, 1))
        throw std::invalid_argument("harvest_good_ladders: proof regime requires alpha >= 4t "
                                    "(disable enforce_guarantees for working parameters)");

    const Graph& g = view.base();
    const int k = view.k();
    const int64_t n = g.vertex_count();
    if (n == 0) throw std::invalid_argument("harvest_good_ladders: empty host");

    HarvestResult result;
    result.spec.t = t;
    result.spec.k = k;
    result.spec.alpha = alpha;
    result.guarantees_enforced = opts.enforce_guarantees;

    HarvestContext ctx(view, t, alpha, opts.max_tuple_visits);
    const int log_nk = n >= 2 ? ceil_log2(int_pow(BigInt(n), static_cast<unsigned>(k))) : 1;
    const size_t stride_full = static_cast<size_t>(2) * t * k;
    const int threads = std::max(1, opts.threads);
    const int64_t top = static_cast<int64_t>(ctx.x1_universe.size());

    auto check_step_guarantees = [&](const HarvestStep& slog) {
        if (!opts.enforce_guarantees) return;
        if (!slog.retention_ok)
            throw std::logic_error("harvest_good_ladders: pigeonhole retention below 1/ceil(log2 n^k)");
        if (!slog.fresh_half_ok)
            throw std::logic_error("harvest_good_ladders: freshness below the half-per-coordinate bound");
    };

    if (t == 1) {
        // Base case: adjacent ordered pairs; adjacent base vertices are
        // automatically distinct in every coordinate.
        result.count = int_pow(BigInt(2) * g.edge_count(), static_cast<unsigned>(k));
        if (opts.materialize) {
            LadderStore store(t, k);
            Walker w(ctx);
            w.for_each_pair(0, top, [&]() {
                if (store.size() >= opts.max_stored_tuples)
                    throw resource_error("harvest_good_ladders: stored-tuple budget exceeded");
                store.push(std::span<const Vertex>(w.buf.data(), stride_full));
            });
            if (BigInt(store.size()) != result.count)
                throw std::logic_error("harvest_good_ladders: pair count mismatch");
            result.ladders = std::move(store);
        }
    } else if (opts.materialize) {
        // Level-by-level with stored working sets.
        std::vector<Vertex> level;
        {
            std::vector<std::vector<Vertex>> parts(threads);
            run_chunks(top, threads, [&](int64_t lo, int64_t hi, int tid) {
                Walker w(ctx);
                w.for_each_pair(lo, hi, [&]() {
                    parts[tid].insert(parts[tid].end(), w.buf.begin(), w.buf.end());
                });
                w.flush_charge();
            });
            for (auto& p : parts) level.insert(level.end(), p.begin(), p.end());
        }
        int entries_per = 2;

        for (int step = 1; step <= t - 1; ++step) {
            const size_t in_stride = static_cast<size_t>(entries_per) * k;
            const int64_t in_count = static_cast<int64_t>(level.size() / in_stride);
            if (in_count == 0)
                throw harvest_dead_end(step, "no tuples entering step " + std::to_string(step));

            // x-extension; keep the dyadic exponent of every extended tuple.
            std::vector<Vertex> ext;
            std::vector<uint8_t> exps;
            StepScan scan;
            {
                std::vector<std::vector<Vertex>> parts(threads);
                std::vector<std::vector<uint8_t>> eparts(threads);
                std::vector<StepScan> scans(threads);
                run_chunks(in_count, threads, [&](int64_t lo, int64_t hi, int tid) {
                    Walker w(ctx);
                    for (int64_t i = lo; i < hi; ++i) {
                        w.buf.assign(level.begin() + i * in_stride,
                                     level.begin() + (i + 1) * in_stride);
                        if (!w.compute_x_candidates()) continue;
                        w.for_each_x([&](u128 d) {
                            int b = ceil_log2_u128(d);
                            ++scans[tid].hist[b];
                            parts[tid].insert(parts[tid].end(), w.buf.begin(), w.buf.end());
                            eparts[tid].push_back(static_cast<uint8_t>(b));
                        });
                    }
                    w.flush_charge();
                });
                size_t total_tuples = 0;
                for (auto& e : eparts) total_tuples += e.size();
                if (total_tuples > opts.max_stored_tuples)
                    throw resource_error("harvest_good_ladders: stored-tuple budget exceeded");
                for (int tid = 0; tid < threads; ++tid) {
                    ext.insert(ext.end(), parts[tid].begin(), parts[tid].end());
                    exps.insert(exps.end(), eparts[tid].begin(), eparts[tid].end());
                    for (size_t b = 0; b < scan.hist.size(); ++b) scan.hist[b] += scans[tid].hist[b];
                }
            }
            int64_t before = 0;
            for (int64_t h : scan.hist) before += h;
            if (before == 0)
                throw harvest_dead_end(step, "no viable x-extension at step " + std::to_string(step));
            int best_b = 0;
            for (size_t b = 1; b < scan.hist.size(); ++b)
                if (scan.hist[b] > scan.hist[best_b]) best_b = static_cast<int>(b);
            ctx.bucket_exp.push_back(best_b);

            // Keep the selected bucket; extend the y-side.
            const size_t x_stride = in_stride + k;
            std::vector<Vertex> next;
            {
                std::vector<std::vector<Vertex>> parts(threads);
                const int64_t xcount = static_cast<int64_t>(exps.size());
                run_chunks(xcount, threads, [&](int64_t lo, int64_t hi, int tid) {
                    Walker w(ctx);
                    for (int64_t i = lo; i < hi; ++i) {
                        if (exps[i] != best_b) continue;
                        w.buf.assign(ext.begin() + i * x_stride, ext.begin() + (i + 1) * x_stride);
                        if (!w.compute_y_candidates()) continue;
                        w.for_each_y([&]() {
                            parts[tid].insert(parts[tid].end(), w.buf.begin(), w.buf.end());
                        });
                    }
                    w.flush_charge();
                });
                size_t total = 0;
                for (auto& p : parts) total += p.size();
                if (total / (in_stride + 2 * k) > opts.max_stored_tuples)
                    throw resource_error("harvest_good_ladders: stored-tuple budget exceeded");
                next.reserve(total);
                for (auto& p : parts) next.insert(next.end(), p.begin(), p.end());
            }
            HarvestStep slog = make_step_log(step, best_b, before, scan.hist[best_b], log_nk, alpha, k);
            slog.fresh_half_ok = !ctx.fresh_half_violated.load();
            check_step_guarantees(slog);
            result.step_log.push_back(slog);

            level = std::move(next);
            entries_per += 2;
            if (level.empty())
                throw harvest_dead_end(step, "no viable y-extension at step " + std::to_string(step));
        }

        LadderStore store(t, k);
        const int64_t final_count = static_cast<int64_t>(level.size() / stride_full);
        for (int64_t i = 0; i < final_count; ++i)
            store.push(std::span<const Vertex>(level.data() + i * stride_full, stride_full));
        result.count = final_count;
        result.ladders = std::move(store);
    } else {
        // Count-only: streaming re-enumeration, nothing stored.
        for (int step = 1; step <= t - 1; ++step) {
            std::vector<StepScan> scans(threads);
            run_chunks(top, threads, [&](int64_t lo, int64_t hi, int tid) {
                Walker w(ctx);
                w.walk(step, lo, hi, [&]() {
                    if (!w.compute_x_candidates()) return;
                    w.for_each_x([&](u128 d) { ++scans[tid].hist[ceil_log2_u128(d)]; });
                });
                w.flush_charge();
            });
            StepScan scan;
            for (int tid = 0; tid < threads; ++tid)
                for (size_t b = 0; b < scan.hist.size(); ++b) scan.hist[b] += scans[tid].hist[b];
            int64_t before = 0;
            for (int64_t h : scan.hist) before += h;
            if (before == 0)
                throw harvest_dead_end(step, "no viable x-extension at step " + std::to_string(step));
            int best_b = 0;
            for (size_t b = 1; b < scan.hist.size(); ++b)
                if (scan.hist[b] > scan.hist[best_b]) best_b = static_cast<int>(b);
            ctx.bucket_exp.push_back(best_b);
            result.step_log.push_back(
                make_step_log(step, best_b, before, scan.hist[best_b], log_nk, alpha, k));
        }

        // Final pass: the last y-extension is counted arithmetically.
        std::vector<BigAccumulator> accs(threads);
        run_chunks(top, threads, [&](int64_t lo, int64_t hi, int tid) {
            Walker w(ctx);
            w.walk(t - 1, lo, hi, [&]() {
                if (!w.compute_x_candidates()) return;
                w.for_each_x([&](u128 d) {
                    if (ceil_log2_u128(d) != ctx.bucket_exp[t - 2]) return;
                    u128 f = w.count_y_choices();
                    if (f) accs[tid].add(f);
                });
            });
            w.flush_charge();
        });
        BigInt total = 0;
        for (auto& a : accs) total += a.total();
        result.count = total;
        for (auto& slog : result.step_log) {
            slog.fresh_half_ok = !ctx.fresh_half_violated.load();
            check_step_guarantees(slog);
        }
    }

    // Discovered caps and the quantitative lower bound, reported either way.
    for (const auto& slog : result.step_log) result.spec.s.push_back(slog.s);
    const double nk_log = static_cast<double>(k) * std::log2(static_cast<double>(n));
    double bound = std::pow(alpha.to_double(), static_cast<double>(t) * k) *
                   std::pow(static_cast<double>(n), (t / 2.0 + 1.0) * k);
    for (double s : result.spec.s) bound *= s;
    bound /= std::pow(std::pow(4.0, k + 1) * nk_log, t - 1);
    result.count_lower_bound = bound;
    result.count_bound_met = result.count.convert_to<double>() >= bound;
    return result;
}

// ---------------------------------------------------------------------------
// Constrained-extension counting (the exhaustive verification oracle).

BigInt count_constrained_extensions(const TensorPowerView& view, const GoodLadderSpec& spec,
                                    std::span<const Vertex> fixed, FixedSide side, int ell,
                                    const std::vector<int>& coords_j, const std::vector<Vertex>& pins,
                                    const EnumerationOptions& opts) {
    validate_spec(spec);
    const int t = spec.t;
    const int k = view.k();
    if (spec.k != k) throw std::invalid_argument("count_constrained_extensions: power mismatch");
    if (static_cast<int>(fixed.size()) != t * k)
        throw std::invalid_argument("count_constrained_extensions: fixed side needs t*k values");
    if (ell < 1 || ell > t)
        throw std::invalid_argument("count_constrained_extensions: ell out of range");
    if (coords_j.size() != pins.size())
        throw std::invalid_argument("count_constrained_extensions: J and pins differ in size");
    std::vector<char> in_j(k, 0);
    std::vector<Vertex> pin_at(k, -1);
    for (size_t i = 0; i < coords_j.size(); ++i) {
        int j = coords_j[i];
        if (j < 0 || j >= k || in_j[j])
            throw std::invalid_argument("count_constrained_extensions: bad coordinate set J");
        in_j[j] = 1;
        pin_at[j] = pins[i];
        if (!view.base().valid_vertex(pins[i]))
            throw std::invalid_argument("count_constrained_extensions: pin out of range");
    }

    const Graph& g = view.base();
    auto fixed_entry = [&](int i) { // 1-based
        return std::span<const Vertex>(fixed.data() + static_cast<size_t>(i - 1) * k,
                                       static_cast<size_t>(k));
    };

    uint64_t nodes = 0;
    BigInt count = 0;
    std::vector<Vertex> free_side(static_cast<size_t>(t) * k, -1);

    // Candidates for free entry i (1-based), coordinate j: entry 1 needs the
    // rung edge to the fixed side only; entry i >= 2 also needs the path edge
    // to entry i-1. The full goodness test runs on every completion.
    auto candidates = [&](int i, int j, std::vector<Vertex>& out) {
        out.clear();
        const Vertex rung = fixed_entry(i)[j];
        if (i == 1) {
            auto nb = g.neighbors(rung);
            out.assign(nb.begin(), nb.end());
        } else {
            const Vertex prev = free_side[static_cast<size_t>(i - 2) * k + j];
            auto a = g.neighbors(rung);
            auto b = g.neighbors(prev);
            std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
        }
        if (i == ell && in_j[j]) {
            const Vertex pin = pin_at[j];
            const bool keep = std::binary_search(out.begin(), out.end(), pin);
            out.clear();
            if (keep) out.push_back(pin);
        }
    };

    std::function<void(int)> place_entry = [&](int i) {
        if (i > t) {
            Ladder l;
            l.t = t;
            l.k = k;
            l.data.resize(static_cast<size_t>(2) * t * k);
            for (int e = 1; e <= t; ++e)
                for (int j = 0; j < k; ++j) {
                    const Vertex fx = fixed_entry(e)[j];
                    const Vertex fr = free_side[static_cast<size_t>(e - 1) * k + j];
                    const Vertex xv = side == FixedSide::X ? fx : fr;
                    const Vertex yv = side == FixedSide::X ? fr : fx;
                    l.data[(static_cast<size_t>(e - 1) * 2) * k + j] = xv;
                    l.data[(static_cast<size_t>(e - 1) * 2 + 1) * k + j] = yv;
                }
            if (is_good_ladder(view, l, spec)) ++count;
            return;
        }
        std::vector<std::vector<Vertex>> cand(k);
        for (int j = 0; j < k; ++j) {
            candidates(i, j, cand[j]);
            if (cand[j].empty()) return;
        }
        std::vector<int> pick(k, 0);
        for (;;) {
            if (++nodes > opts.max_nodes)
                throw resource_error("count_constrained_extensions: node budget exceeded");
            for (int j = 0; j < k; ++j)
                free_side[static_cast<size_t>(i - 1) * k + j] = cand[j][pick[j]];
            place_entry(i + 1);
            int j = k - 1;
            while (j >= 0 && ++pick[j] == static_cast<int>(cand[j].size())) { pick[j] = 0; --j; }
            if (j < 0) break;
        }
    };
    place_entry(1);
    return count;
}

bool extension_bound_holds(const BigInt& count, const TensorPowerView& view,
                           const GoodLadderSpec& spec, size_t j_size) {
    DegreeStats stats = degree_stats(view.base());
    BigRat rhs = 1;
    for (int i = 0; i < view.k(); ++i) rhs *= stats.max_deg;
    for (double s : spec.s) rhs *= BigRat(s);
    BigRat lhs_sq = BigRat(count * count);
    BigRat alpha_pow = 1;
    for (size_t i = 0; i < j_size; ++i) alpha_pow *= spec.alpha.squared();
    return lhs_sq * alpha_pow <= rhs * rhs;
}

} // namespace gridturan
