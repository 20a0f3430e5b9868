#include "gridturan/graph.hpp"
#include "gridturan/graph_io.hpp"
#include "gridturan/errors.hpp"
#include "gridturan/generators.hpp"

#include "support.hpp"

#include <doctest.h>

using namespace gridturan;
using testsupport::complete_graph;
using testsupport::cycle_graph;
using testsupport::star_graph;

TEST_CASE("graph construction validates input") {
    CHECK_THROWS_AS(Graph(3, {{0, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(Graph(3, {{0, 1}, {1, 0}}), std::invalid_argument); // duplicate after normalizing
    CHECK_THROWS_AS(Graph(3, {{0, 3}}), std::invalid_argument);
    Graph g(3, {{2, 0}, {0, 1}});
    CHECK(g.edges() == std::vector<Edge>{{0, 1}, {0, 2}});
}

TEST_CASE("codegree on the named examples") {
    Graph c4 = cycle_graph(4);
    // opposite pair in C4 shares both remaining vertices
    CHECK(codegree(c4, 0, 2) == 2);
    Graph k4 = complete_graph(4);
    CHECK(codegree(k4, 1, 3) == 2);
    // the diagonal convention: codegree(u, u) = deg(u)
    CHECK(codegree(c4, 1, 1) == 2);
    CHECK(codegree(star_graph(5), 0, 0) == 5);
    CHECK_THROWS_AS(codegree(c4, 0, 5), std::invalid_argument);
}

TEST_CASE("codegree symmetry and min-degree cap on random graphs") {
    for (uint64_t seed : {1, 2, 3}) {
        Graph g = random_graph(24, 0.4, seed);
        for (Vertex u = 0; u < g.vertex_count(); ++u)
            for (Vertex v = 0; v < g.vertex_count(); ++v) {
                CHECK(codegree(g, u, v) == codegree(g, v, u));
                CHECK(codegree(g, u, v) <= std::min(g.degree(u), g.degree(v)));
            }
    }
}

TEST_CASE("degree_stats") {
    DegreeStats c4 = degree_stats(cycle_graph(4));
    CHECK(c4.min_deg == 2);
    CHECK(c4.avg_deg == BigRat(2));
    CHECK(c4.max_deg == 2);

    DegreeStats star = degree_stats(star_graph(3));
    CHECK(star.min_deg == 1);
    CHECK(star.avg_deg == BigRat(3, 2));
    CHECK(star.max_deg == 3);

    DegreeStats empty5 = degree_stats(Graph(5, {}));
    CHECK(empty5.min_deg == 0);
    CHECK(empty5.avg_deg == BigRat(0));
    CHECK(empty5.max_deg == 0);

    CHECK_THROWS_AS(degree_stats(Graph(0, {})), std::invalid_argument);
}

TEST_CASE("edge_density_alpha is exact") {
    CHECK(edge_density_alpha(cycle_graph(4)).squared() == BigRat(16, 64));    // (1/2)^2
    CHECK(edge_density_alpha(complete_graph(4)).squared() == BigRat(36, 64)); // (3/4)^2
    CHECK(edge_density_alpha(cycle_graph(4)).to_double() == doctest::Approx(0.5));
    // n=100, e=5000 -> alpha = 5
    Density a = Density::from_edge_density(5000, 100);
    CHECK(a.squared() == BigRat(25));
    CHECK(a.to_double() == doctest::Approx(5.0));
}

TEST_CASE("peel_min_degree examples") {
    SUBCASE("K3 plus isolated vertex at threshold 3/4") {
        Graph g(4, {{0, 1}, {0, 2}, {1, 2}});
        PeelResult r = peel_min_degree(g, BigRat(3, 4));
        CHECK(r.kept == std::vector<Vertex>{0, 1, 2});
        CHECK(r.graph.edge_count() == 3);
    }
    SUBCASE("C4 at threshold 1 is unchanged") {
        PeelResult r = peel_min_degree(cycle_graph(4), BigRat(1));
        CHECK(r.graph.vertex_count() == 4);
        CHECK(r.graph.edge_count() == 4);
    }
    SUBCASE("K4 plus pendant at threshold 1.4 peels to K4") {
        Graph g(5, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}, {3, 4}});
        PeelResult r = peel_min_degree(g, BigRat(14, 10));
        CHECK(r.kept == std::vector<Vertex>{0, 1, 2, 3});
        CHECK(r.graph.edge_count() == 6);
    }
    SUBCASE("peeling everything is a legal, flagged outcome") {
        PeelResult r = peel_min_degree(cycle_graph(4), BigRat(10));
        CHECK(r.empty());
    }
}

TEST_CASE("peeling at half the average degree keeps a nonempty graph") {
    for (uint64_t seed = 1; seed <= 20; ++seed) {
        Graph g = random_graph(30, 0.15, seed);
        if (g.edge_count() == 0) continue;
        BigRat threshold(BigInt(g.edge_count()), BigInt(g.vertex_count())); // dbar/2
        PeelResult r = peel_min_degree(g, threshold);
        REQUIRE(!r.empty());
        for (Vertex v = 0; v < r.graph.vertex_count(); ++v)
            CHECK(BigRat(r.graph.degree(v)) >= threshold);
    }
}

TEST_CASE("canonical edge list round-trips") {
    Graph g = random_graph(17, 0.3, 7);
    std::string text = write_graph(g);
    Graph h = parse_graph(text);
    CHECK(h.vertex_count() == g.vertex_count());
    CHECK(h.edges() == g.edges());
    CHECK(write_graph(h) == text);
}

TEST_CASE("parse errors name the line") {
    CHECK(parse_graph("2 1\n0 1\n").edge_count() == 1);
    CHECK_THROWS_WITH_AS(parse_graph("2 1\n1 1\n"), doctest::Contains("self-loop"), parse_error);
    CHECK_THROWS_WITH_AS(parse_graph("3 2\n0 1\n0 1\n"), doctest::Contains("duplicate"), parse_error);
    CHECK_THROWS_WITH_AS(parse_graph("3 2\n0 2\n0 1\n"), doctest::Contains("sorted"), parse_error);
    CHECK_THROWS_WITH_AS(parse_graph("2 1\n0 2\n"), doctest::Contains("range"), parse_error);
    CHECK_THROWS_WITH_AS(parse_graph("2 1\n1 0\n"), doctest::Contains("u < v"), parse_error);
    CHECK_THROWS_AS(parse_graph("2 2\n0 1\n"), parse_error);
    // comments are allowed anywhere
    Graph g = parse_graph("# header\n2 1\n# between\n0 1\n# trailing\n");
    CHECK(g.edge_count() == 1);
    try {
        parse_graph("3 1\n1 1\n");
        FAIL("expected parse_error");
    } catch (const parse_error& e) {
        CHECK(e.line() == 2);
    }
}

TEST_CASE("density comparison helpers") {
    Density a = Density::from_edge_density(9, 4); // 9/8
    CHECK(count_at_least(2, a));
    CHECK(count_less(1, a));
    CHECK(a.ceil_value() == 2);
    CHECK(Density::from_ratio(3, 2).scaled(BigRat(2)).squared() == BigRat(9));
    CHECK(Density::from_ratio(3, 1).times_sqrt(4).squared() == BigRat(36));
    CHECK(Density::from_decimal("8.05").squared() == BigRat(805 * 805, 100 * 100));
    CHECK(Density::from_decimal("161/20").squared() == BigRat(161 * 161, 400));
    CHECK(ceil_log2(BigInt(1)) == 0);
    CHECK(ceil_log2(BigInt(260)) == 9);
    CHECK(ceil_log2(BigInt(256)) == 8);
}
