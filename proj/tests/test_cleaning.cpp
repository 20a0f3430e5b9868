#include "gridturan/cleaning.hpp"
#include "gridturan/generators.hpp"
#include "gridturan/graph_io.hpp"

#include "support.hpp"

#include <doctest.h>

using namespace gridturan;
using testsupport::complete_graph;
using testsupport::cycle_graph;
using testsupport::star_graph;

namespace {

/// Two disjoint K_m blocks joined by a single bridge {0, m}. Dense enough
/// (m >= 260) that the codegree threshold alpha^2/32 exceeds 1, which is the
/// only way a type-2 deletion can trigger.
Graph two_cliques_with_bridge(int m) {
    std::vector<Edge> edges;
    for (Vertex u = 0; u < m; ++u)
        for (Vertex v = u + 1; v < m; ++v) {
            edges.emplace_back(u, v);
            edges.emplace_back(u + m, v + m);
        }
    edges.emplace_back(0, m);
    return Graph(2 * m, std::move(edges));
}

} // namespace

TEST_CASE("clean_subgraph leaves the named fixed points alone") {
    SUBCASE("C4") {
        auto [h, report] = clean_subgraph(cycle_graph(4));
        CHECK(h.edges() == cycle_graph(4).edges());
        CHECK(report.log.empty());
        CHECK(report.output_edges == 4);
    }
    SUBCASE("edgeless") {
        auto [h, report] = clean_subgraph(Graph(5, {}));
        CHECK(h.edge_count() == 0);
        CHECK(report.log.empty());
    }
    SUBCASE("K_{1,5} survives under the w = v convention") {
        auto [h, report] = clean_subgraph(star_graph(5));
        CHECK(h.edges() == star_graph(5).edges());
        CHECK(report.log.empty());
    }
}

TEST_CASE("type-1 deletion on a dense clique with a pendant") {
    // K20 with a pendant: e/(4n) = 191/84 > 1, so the pendant's only edge
    // goes in a type-1 step.
    std::vector<Edge> edges = complete_graph(20).edges();
    edges.emplace_back(5, 20);
    Graph g(21, std::move(edges));
    auto [h, report] = clean_subgraph(g);
    CHECK(h.edge_count() == 190);
    CHECK(h.degree(20) == 0);
    REQUIRE(report.type1_count() == 1);
    CHECK(report.type2_count() == 0);
    CHECK(report.log[0].u == 20);
    CHECK(report.log[0].edges_removed == 1);
    CHECK(replay_cleaning(g, report).edges() == h.edges());
}

TEST_CASE("type-2 deletion removes the bridge between two dense cliques") {
    Graph g = two_cliques_with_bridge(300);
    auto [h, report] = clean_subgraph(g);
    CHECK(report.type1_count() == 0);
    REQUIRE(report.type2_count() == 1);
    CHECK(report.log[0].u == 0);
    CHECK(report.log[0].v == 300);
    CHECK(h.edge_count() == g.edge_count() - 1);
    CHECK(!h.has_edge(0, 300));
    CHECK(replay_cleaning(g, report).edges() == h.edges());

    CleaningPostcheck post = check_cleaning_postconditions(g, h, report);
    CHECK(post.all());

    SUBCASE("idempotent") {
        auto [h2, report2] = clean_subgraph(h);
        CHECK(report2.log.empty());
        CHECK(h2.edges() == h.edges());
    }
    SUBCASE("any deletion order reaches a valid output") {
        for (uint64_t seed : {1, 2, 3}) {
            auto [hs, rs] = clean_subgraph(g, DeletionOrder::Seeded, seed);
            CHECK(check_cleaning_postconditions(g, hs, rs).all());
            CHECK(hs.edges() == h.edges()); // single violation: same endpoint
        }
    }
}

TEST_CASE("postconditions hold exactly on seeded random graphs, any order") {
    for (uint64_t seed = 1; seed <= 12; ++seed) {
        int n = 16 + static_cast<int>(seed % 4) * 24;
        double p = 0.1 + 0.07 * static_cast<double>(seed % 9);
        Graph g = random_graph(n, p, seed);
        if (g.vertex_count() == 0) continue;
        auto [h, report] = clean_subgraph(g);
        CHECK(check_cleaning_postconditions(g, h, report).all());
        auto [hs, rs] = clean_subgraph(g, DeletionOrder::Seeded, seed * 77);
        CHECK(check_cleaning_postconditions(g, hs, rs).all());
    }
}

TEST_CASE("regularize") {
    SUBCASE("C4 is already regular") {
        RegularizeResult r = regularize(cycle_graph(4));
        CHECK(r.graph.edges() == cycle_graph(4).edges());
        CHECK(r.reported_K == BigRat(1));
    }
    SUBCASE("5-regular graph is returned whole") {
        Graph g = make_grid(2, 5); // 5-dimensional cube, 5-regular
        RegularizeResult r = regularize(g);
        CHECK(r.graph.edge_count() == g.edge_count());
        CHECK(r.reported_K == BigRat(1));
    }
    SUBCASE("K_{1,8}: class-induced subgraph keeps the whole star") {
        RegularizeResult r = regularize(star_graph(8));
        // either class's closed neighbourhood is the whole star
        CHECK(r.graph.edge_count() == 8);
        CHECK(r.reported_K == BigRat(8));
        CHECK(BigInt(r.graph.edge_count()) * 2 * ceil_log2(BigInt(9)) >= 8);
    }
    SUBCASE("retained-edge guarantee on random graphs") {
        for (uint64_t seed = 1; seed <= 10; ++seed) {
            Graph g = random_graph(40, 0.2, seed);
            if (g.edge_count() == 0) continue;
            RegularizeResult r = regularize(g);
            CHECK(BigInt(r.graph.edge_count()) * 2 * ceil_log2(BigInt(40)) >=
                  BigInt(g.edge_count()));
            DegreeStats stats = degree_stats(r.graph);
            CHECK(stats.min_deg >= 1);
        }
    }
    CHECK_THROWS_AS(regularize(Graph(3, {})), std::invalid_argument);
}

TEST_CASE("check_host_conditions") {
    SUBCASE("complete graph at its own density satisfies everything") {
        Graph k = complete_graph(260);
        HostConditionReport rep = check_host_conditions(k, edge_density_alpha(k));
        CHECK(rep.a);
        CHECK(rep.b);
        CHECK(rep.c);
    }
    SUBCASE("C4 at alpha = 1/2") {
        HostConditionReport rep = check_host_conditions(cycle_graph(4), Density::from_ratio(1, 2));
        CHECK(rep.all());
    }
    SUBCASE("(a) fails as soon as alpha exceeds the density") {
        Graph g = cycle_graph(4);
        Density above = Density::from_square(edge_density_alpha(g).squared() * 2);
        HostConditionReport rep = check_host_conditions(g, above);
        CHECK(!rep.a);
    }
    SUBCASE("boundary of (a) is exact, not floating point") {
        Graph g = cycle_graph(4); // alpha = 1/2 exactly
        CHECK(check_host_conditions(g, Density::from_ratio(1, 2)).a);
        CHECK(!check_host_conditions(g, Density::from_square(BigRat(1, 4) + BigRat(1, 1000000000))).a);
    }
}

TEST_CASE("prepare_host") {
    SUBCASE("K8 succeeds with alpha' equal to the achieved density") {
        PrepareHostResult r = prepare_host(complete_graph(8));
        REQUIRE(r.ok());
        CHECK(r.host->alpha_prime == edge_density_alpha(r.host->graph));
        CHECK(r.host->m == 8);
        CHECK(r.host->K == 12000);
        CHECK(r.host->graph.edge_count() == 28);
    }
    SUBCASE("two dense cliques with a bridge fail condition (c)") {
        // Cleaning keeps the bridge at this size (alpha^2/32 < 1) but the
        // achieved alpha' is far above what the bridge endpoint can support.
        Graph g = two_cliques_with_bridge(20);
        PrepareHostResult r = prepare_host(g);
        REQUIRE(!r.ok());
        CHECK(r.failure->condition == 'c');
        CHECK(r.failure->witness.find("(0,20)") != std::string::npos);
    }
    SUBCASE("a path host passes only because alpha' is tiny") {
        PrepareHostResult r = prepare_host(make_path(50));
        REQUIRE(r.ok());
        CHECK(r.host->alpha_prime < Density::from_ratio(1, 1));
        // at any alpha >= 1 the leaf edges violate (c)
        HostConditionReport rep = check_host_conditions(r.host->graph, Density::from_ratio(1, 1));
        CHECK(!rep.c);
        REQUIRE(rep.witness_c.has_value());
        auto [u, v] = *rep.witness_c;
        CHECK(r.host->graph.degree(u) <= 2);
    }
    SUBCASE("vertex map points back into the input graph") {
        std::vector<Edge> edges = complete_graph(12).edges();
        Graph g(14, std::move(edges)); // two extra isolated vertices
        PrepareHostResult r = prepare_host(g);
        REQUIRE(r.ok());
        CHECK(r.host->m == 12);
        for (const auto& [u, v] : r.host->graph.edges())
            CHECK(g.has_edge(r.host->vertex_map[u], r.host->vertex_map[v]));
    }
}

TEST_CASE("type-2 deletions stay under the quarter bound on random graphs") {
    for (uint64_t seed = 30; seed < 40; ++seed) {
        Graph g = random_graph(48, 0.35, seed);
        auto [h, report] = clean_subgraph(g);
        CHECK(4 * report.type2_count() <= g.edge_count());
        CHECK(2 * h.edge_count() >= g.edge_count());
    }
}

TEST_CASE("jiang_seiver_K hits 640 at eps = 1/2") {
    CHECK(jiang_seiver_K(0.5) == doctest::Approx(640.0));
    CHECK(jiang_seiver_K(1.0 / 3.0) == doctest::Approx(20.0 * std::exp2(10.0)));
    CHECK_THROWS_AS(jiang_seiver_K(0.0), std::invalid_argument);
}
