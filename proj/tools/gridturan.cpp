// Command-line front end: graph generation, host cleaning, good-ladder
// harvesting, grid embedding, exact Turan search, diagonal-crossing checks
// and the lower-bound construction verifier. One binary, subcommand style;
// all configuration through flags (no environment variables), fixed default
// seed, data on stdout or files, diagnostics on stderr.
//
// Exit codes: 0 success / found, 1 legitimately not found (no embedding, no
// ladders, budget-partial Turan value), 2 error.

#include "gridturan/cleaning.hpp"
#include "gridturan/embedder.hpp"
#include "gridturan/errors.hpp"
#include "gridturan/generators.hpp"
#include "gridturan/graph_io.hpp"
#include "gridturan/ladders.hpp"
#include "gridturan/oracle.hpp"
#include "gridturan/rational.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

namespace gt = gridturan;

namespace {

constexpr uint64_t kDefaultSeed = 20240601;

void emit(const std::string& text, const std::string& output_path) {
    if (output_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(output_path);
        if (!out) throw std::runtime_error("cannot open output file: " + output_path);
        out << text;
    }
}

struct GenConfig {
    std::string type;
    int t = 2, d = 2, k = 1, q = 2, r = 1, n = 10;
    double p = 0.5;
    uint64_t seed = kDefaultSeed;
    std::string input, input_b, output;
};

int run_gen(const GenConfig& cfg) {
    gt::Graph g;
    if (cfg.type == "path") {
        g = gt::make_path(cfg.t);
    } else if (cfg.type == "grid") {
        g = gt::make_grid(cfg.t, cfg.d);
    } else if (cfg.type == "product") {
        g = gt::cartesian_product(gt::read_graph_file(cfg.input), gt::read_graph_file(cfg.input_b));
    } else if (cfg.type == "tensor") {
        auto view = gt::tensor_power(gt::read_graph_file(cfg.input), cfg.k,
                                     gt::TensorPowerView::Mode::Explicit);
        g = view.materialized();
    } else if (cfg.type == "polarity") {
        g = gt::polarity_graph(cfg.q);
    } else if (cfg.type == "blowup") {
        g = gt::blowup(gt::read_graph_file(cfg.input), cfg.r);
    } else if (cfg.type == "random") {
        g = gt::random_graph(cfg.n, cfg.p, cfg.seed);
    } else {
        throw std::invalid_argument("unknown generator type: " + cfg.type);
    }
    emit(gt::write_graph(g), cfg.output);
    return 0;
}

int run_clean(const std::string& input, const std::string& output, const std::string& report_path,
              const std::string& order, uint64_t seed) {
    gt::Graph g = gt::read_graph_file(input);
    auto policy = order == "seeded" ? gt::DeletionOrder::Seeded : gt::DeletionOrder::LowestFirst;
    auto [cleaned, report] = gt::clean_subgraph(g, policy, seed);
    emit(gt::write_graph(cleaned), output);
    std::ostringstream rep;
    for (const auto& step : report.log) {
        if (step.kind == gt::CleaningStep::Kind::Type1)
            rep << "T1 " << step.u << '\n';
        else
            rep << "T2 " << step.u << ' ' << step.v << '\n';
    }
    if (!report_path.empty()) emit(rep.str(), report_path);
    std::cout << "input_edges=" << report.input_edges << '\n'
              << "output_edges=" << report.output_edges << '\n'
              << "type1_deletions=" << report.type1_count() << '\n'
              << "type2_deletions=" << report.type2_count() << '\n';
    return 0;
}

int run_ladders(const std::string& input, int t, int k, const std::string& alpha_text,
                bool count_only, bool relaxed, const std::string& spec_out, int threads) {
    gt::Graph g = gt::read_graph_file(input);
    gt::Density alpha = gt::Density::from_decimal(alpha_text);
    auto view = gt::tensor_power(g, k, gt::TensorPowerView::Mode::Implicit);
    gt::HarvestOptions opts;
    opts.materialize = !count_only;
    opts.enforce_guarantees = !relaxed;
    opts.threads = threads;
    try {
        gt::HarvestResult res = gt::harvest_good_ladders(view, t, alpha, opts);
        std::cout << "count=" << res.count << '\n';
        for (size_t i = 0; i < res.spec.s.size(); ++i)
            std::cout << "s_" << (i + 1) << '=' << res.spec.s[i] << '\n';
        for (const auto& step : res.step_log)
            std::cout << "step_" << step.step << "_before=" << step.tuples_before << " "
                      << "step_" << step.step << "_kept=" << step.tuples_kept << '\n';
        std::cout << "count_lower_bound=" << res.count_lower_bound << '\n'
                  << "count_bound_met=" << (res.count_bound_met ? 1 : 0) << '\n';
        if (!spec_out.empty()) {
            std::ostringstream ss;
            for (double s : res.spec.s) ss << s << '\n';
            emit(ss.str(), spec_out);
        }
        return 0;
    } catch (const gt::harvest_dead_end& e) {
        std::cout << "count=0\nstatus=dead-end\nstep=" << e.step() << '\n';
        return 1;
    }
}

int run_embed(const std::string& host_path, const std::string& tree_path, int t, int k,
              const std::string& alpha_text, int budget, bool budget_set, uint64_t seed,
              int threads) {
    gt::Graph host = gt::read_graph_file(host_path);
    gt::Graph tree = gt::read_graph_file(tree_path);
    gt::EmbedWorking working;
    working.k = k;
    working.alpha = gt::Density::from_decimal(alpha_text);
    if (budget_set) working.collision_budget = budget;
    working.start_rotation = seed;
    working.harvest.threads = threads;
    gt::EmbedResult res = gt::embed_tree_product(host, tree, t, working);
    if (res.ok()) {
        const gt::Embedding& emb = *res.embedding;
        std::cout << "status=found\ncoordinate=" << emb.coordinate << '\n';
        for (int p = 0; p < emb.r; ++p)
            for (int i = 0; i < t; ++i)
                std::cout << p << ' ' << i << ' ' << emb.at(p, i) << '\n';
        return 0;
    }
    std::cout << "status=not-found\nstage=" << gt::embed_stage_name(res.failure->stage) << '\n';
    std::cerr << "embed: " << res.failure->detail << '\n';
    return 1;
}

int run_turan(int n, const std::string& forbidden_path, double budget_seconds,
              const std::string& witness_out) {
    gt::Graph h = gt::read_graph_file(forbidden_path);
    gt::TuranResult res = gt::turan_number(n, h, std::chrono::duration<double>(budget_seconds));
    std::cout << "value=" << res.value << '\n'
              << "exact=" << (res.exact ? 1 : 0) << '\n';
    if (!witness_out.empty()) emit(gt::write_graph(res.witness), witness_out);
    return res.exact ? 0 : 1;
}

int run_diagonals(int t, bool exhaustive, const std::string& assignment, int threads) {
    if (exhaustive) {
        const int squares = (t - 1) * (t - 1);
        if (squares > 30) throw std::invalid_argument("diagonals: exhaustive range capped at t = 6");
        const uint64_t total = uint64_t{1} << squares;
        const int T = std::max(1, threads);
        std::vector<uint64_t> verified(T, 0);
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> errors(T);
        for (int tid = 0; tid < T; ++tid) {
            uint64_t lo = total * tid / T, hi = total * (tid + 1) / T;
            pool.emplace_back([&, lo, hi, tid]() {
                try {
                    for (uint64_t mask = lo; mask < hi; ++mask) {
                        gt::diagonal_crossing(gt::DiagonalAssignment::from_bits(t, mask));
                        ++verified[tid];
                    }
                } catch (...) {
                    errors[tid] = std::current_exception();
                }
            });
        }
        for (auto& th : pool) th.join();
        for (auto& err : errors)
            if (err) std::rethrow_exception(err);
        uint64_t count = 0;
        for (uint64_t v : verified) count += v;
        std::cout << "assignments=" << total << '\n' << "verified=" << count << '\n';
        return 0;
    }
    gt::DiagonalAssignment assign;
    assign.t = t;
    for (char c : assignment) {
        if (c != '0' && c != '1')
            throw std::invalid_argument("diagonals: assignment must be a 0/1 string");
        assign.bits.push_back(c == '1');
    }
    gt::CrossingPath path = gt::diagonal_crossing(assign);
    std::cout << "direction="
              << (path.direction == gt::CrossingPath::Direction::LeftRight ? "left-right"
                                                                           : "top-bottom")
              << '\n'
              << "vertices=" << path.points.size() << '\n';
    std::cout << "path=";
    for (size_t i = 0; i < path.points.size(); ++i) {
        if (i) std::cout << ',';
        std::cout << path.points[i].first << ':' << path.points[i].second;
    }
    std::cout << '\n';
    return 0;
}

int run_verify_lb(int q, int t) {
    gt::LowerBoundReport rep = gt::verify_lower_bound_construction(q, t);
    const char* ft = rep.ft_free == gt::LowerBoundReport::Freeness::Free        ? "free"
                     : rep.ft_free == gt::LowerBoundReport::Freeness::NotFree   ? "not-free"
                                                                                : "unchecked";
    std::cout << "q=" << rep.q << '\n'
              << "t=" << rep.t << '\n'
              << "base_c4_free=" << (rep.base_c4_free ? 1 : 0) << '\n'
              << "blowup_n=" << rep.blowup_n << '\n'
              << "blowup_edges=" << rep.blowup_edges << '\n'
              << "ft_free=" << ft << '\n'
              << "c_achieved=" << rep.c_achieved << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Turan-type experiments with grid subgraphs"};
    app.require_subcommand(1);
    app.fallthrough(); // lets --threads appear after the subcommand too

    int threads = 1;
    app.add_option("--threads", threads, "worker threads (outputs are identical for any value)")
        ->check(CLI::PositiveNumber);

    GenConfig gen;
    auto* cmd_gen = app.add_subcommand("gen", "emit a generated graph as a canonical edge list");
    cmd_gen->add_option("--type", gen.type,
                        "path | grid | product | tensor | polarity | blowup | random")
        ->required();
    cmd_gen->add_option("--t", gen.t, "path length / grid side");
    cmd_gen->add_option("--d", gen.d, "grid dimension");
    cmd_gen->add_option("--k", gen.k, "tensor power");
    cmd_gen->add_option("--q", gen.q, "prime order of the polarity plane");
    cmd_gen->add_option("--r", gen.r, "blowup factor");
    cmd_gen->add_option("--n", gen.n, "vertex count (random)");
    cmd_gen->add_option("--p", gen.p, "edge probability (random)");
    cmd_gen->add_option("--seed", gen.seed, "PRNG seed (random)");
    cmd_gen->add_option("--input", gen.input, "input edge list (tensor, blowup, product)");
    cmd_gen->add_option("--b", gen.input_b, "second input edge list (product)");
    cmd_gen->add_option("--output", gen.output, "output file (default stdout)");

    std::string cl_in, cl_out, cl_report, cl_order = "lowest";
    uint64_t cl_seed = kDefaultSeed;
    auto* cmd_clean = app.add_subcommand("clean", "run the two-phase deletion procedure");
    cmd_clean->add_option("--input", cl_in)->required();
    cmd_clean->add_option("--output", cl_out, "cleaned graph file (default stdout)");
    cmd_clean->add_option("--report", cl_report, "deletion log file (\"T1 v\" / \"T2 u v\" lines)");
    cmd_clean->add_option("--order", cl_order, "lowest | seeded")
        ->check(CLI::IsMember({"lowest", "seeded"}));
    cmd_clean->add_option("--seed", cl_seed, "seed for --order seeded");

    std::string la_in, la_alpha, la_spec_out;
    int la_t = 2, la_k = 1;
    bool la_count_only = false, la_relaxed = false;
    auto* cmd_ladders = app.add_subcommand("ladders", "harvest good ladders in the k-th power");
    cmd_ladders->add_option("--input", la_in)->required();
    cmd_ladders->add_option("--t", la_t)->required();
    cmd_ladders->add_option("--k", la_k);
    cmd_ladders->add_option("--alpha", la_alpha, "codegree floor (decimal or p/q)")->required();
    cmd_ladders->add_flag("--count-only", la_count_only, "stream counts without storing ladders");
    cmd_ladders->add_flag("--relaxed", la_relaxed,
                          "allow alpha < 4t; proof-regime guarantees become reports");
    cmd_ladders->add_option("--spec-out", la_spec_out, "write discovered s values, one per line");

    std::string em_host, em_tree, em_alpha;
    int em_t = 2, em_k = 1, em_budget = 0;
    uint64_t em_seed = kDefaultSeed;
    auto* cmd_embed = app.add_subcommand("embed", "embed T box P_t into a host graph");
    cmd_embed->add_option("--host", em_host)->required();
    cmd_embed->add_option("--tree", em_tree)->required();
    cmd_embed->add_option("--t", em_t)->required();
    cmd_embed->add_option("--k", em_k);
    cmd_embed->add_option("--alpha", em_alpha, "working codegree floor")->required();
    auto* em_budget_opt =
        cmd_embed->add_option("--budget", em_budget, "collision budget (default ceil(k/(rt)^2))");
    cmd_embed->add_option("--seed", em_seed, "rotates the greedy start vertex");

    int tu_n = 4;
    double tu_budget = 3600.0;
    std::string tu_forbidden, tu_witness;
    auto* cmd_turan = app.add_subcommand("turan", "exact ex(n, H) by exhaustive search");
    cmd_turan->add_option("--n", tu_n)->required();
    cmd_turan->add_option("--forbidden", tu_forbidden)->required();
    cmd_turan->add_option("--budget", tu_budget, "wall-clock seconds");
    cmd_turan->add_option("--witness-out", tu_witness, "extremal witness edge list");

    int di_t = 4;
    bool di_exhaustive = false;
    std::string di_assignment;
    auto* cmd_diag = app.add_subcommand("diagonals", "crossing paths of diagonal assignments");
    cmd_diag->add_option("--t", di_t)->required();
    cmd_diag->add_flag("--exhaustive", di_exhaustive, "verify all 2^{(t-1)^2} assignments");
    cmd_diag->add_option("--assignment", di_assignment,
                         "row-major 0/1 string, '1' = \"/\" diagonal");

    int lb_q = 2, lb_t = 3;
    auto* cmd_lb = app.add_subcommand("verify-lb", "check the blowup lower-bound construction");
    cmd_lb->add_option("--q", lb_q)->required();
    cmd_lb->add_option("--t", lb_t)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_gen->parsed()) return run_gen(gen);
        if (cmd_clean->parsed()) return run_clean(cl_in, cl_out, cl_report, cl_order, cl_seed);
        if (cmd_ladders->parsed())
            return run_ladders(la_in, la_t, la_k, la_alpha, la_count_only, la_relaxed, la_spec_out,
                               threads);
        if (cmd_embed->parsed())
            return run_embed(em_host, em_tree, em_t, em_k, em_alpha, em_budget,
                             em_budget_opt->count() > 0, em_seed, threads);
        if (cmd_turan->parsed()) return run_turan(tu_n, tu_forbidden, tu_budget, tu_witness);
        if (cmd_diag->parsed()) {
            if (!di_exhaustive && di_assignment.empty())
                throw std::invalid_argument("diagonals: need --exhaustive or --assignment");
            return run_diagonals(di_t, di_exhaustive, di_assignment, threads);
        }
        if (cmd_lb->parsed()) return run_verify_lb(lb_q, lb_t);
    } catch (const gt::parse_error& e) {
        std::cerr << "error: parse-error: " << e.what() << '\n';
        return 2;
    } catch (const gt::resource_error& e) {
        std::cerr << "error: resource-budget: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: invalid-argument: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: internal: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
