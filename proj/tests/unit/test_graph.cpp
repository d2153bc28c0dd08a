#include <doctest.h>

#include "dksred/graph.hpp"
#include "oracles.hpp"

using namespace dksred;

namespace {

ExplicitGraph make(std::size_t n, std::vector<Edge> edges) { return ExplicitGraph(n, edges); }

ExplicitGraph triangle() { return make(3, {{0, 1}, {1, 2}, {0, 2}}); }
ExplicitGraph cycle4() { return make(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}); }

ExplicitGraph complete(std::size_t n) {
    std::vector<Edge> e;
    for (Vertex a = 0; a < n; ++a) {
        for (Vertex b = a + 1; b < n; ++b) {
            e.emplace_back(a, b);
        }
    }
    return ExplicitGraph(n, e);
}

}  // namespace

TEST_CASE("graph construction") {
    const ExplicitGraph g = make(4, {{1, 0}, {0, 1}, {2, 3}});
    CHECK(g.num_edges() == 2);
    CHECK(g.has_edge(0, 1));
    CHECK(g.has_edge(1, 0));
    CHECK_FALSE(g.has_edge(0, 2));
    CHECK(g.edges() == std::vector<Edge>{{0, 1}, {2, 3}});
    CHECK_THROWS(make(3, {{1, 1}}));
    CHECK_THROWS(make(3, {{0, 3}}));
}

TEST_CASE("density examples") {
    const std::vector<Vertex> all3{0, 1, 2};
    CHECK(density(triangle(), all3) == 1);
    CHECK(density(make(3, {{0, 1}, {1, 2}}), all3) == Rational(2, 3));
    const ExplicitGraph c4 = cycle4();
    for (Vertex skip = 0; skip < 4; ++skip) {
        std::vector<Vertex> s;
        for (Vertex v = 0; v < 4; ++v) {
            if (v != skip) {
                s.push_back(v);
            }
        }
        CHECK(density(c4, s) == Rational(2, 3));
    }
    const std::vector<Vertex> one{0};
    CHECK_THROWS(density(c4, one));
    const std::vector<Vertex> dup{0, 0};
    CHECK_THROWS(density(c4, dup));
    CHECK_THROWS(density(make(1, {})));
    CHECK(density(c4) == Rational(2, 3));
}

TEST_CASE("labelled biclique count examples") {
    CHECK(count_labeled_bicliques(make(2, {{0, 1}}), 1) == 2);
    CHECK(count_labeled_bicliques(triangle(), 1) == 6);
    CHECK(count_labeled_bicliques(triangle(), 2) == 18);
    CHECK(count_labeled_bicliques(make(5, {}), 2) == 0);
    CHECK(count_labeled_bicliques(complete(4), 1) == 12);
    CHECK_THROWS(count_labeled_bicliques(triangle(), 0));
    CHECK_THROWS_AS(count_labeled_bicliques(complete(30), 3, 100), BudgetExceeded);
}

TEST_CASE("t = 1 count is twice the edge count") {
    for (std::size_t n = 1; n <= 8; ++n) {
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            const ExplicitGraph g = oracle::random_graph(n, seed % 5, 4, seed);
            CHECK(count_labeled_bicliques(g, 1) == 2 * g.num_edges());
        }
    }
}

TEST_CASE("optimized count equals V^{2t} enumeration") {
    for (std::size_t n = 1; n <= 6; ++n) {
        for (std::uint64_t seed = 0; seed < 25; ++seed) {
            const ExplicitGraph g = oracle::random_graph(n, 1 + seed % 4, 4, seed * 31 + n);
            for (std::uint32_t t = 1; t <= 2; ++t) {
                CHECK(count_labeled_bicliques(g, t) == oracle::biclique_count(g, t));
            }
        }
    }
}

TEST_CASE("count is monotone under edge addition") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const ExplicitGraph g = oracle::random_graph(7, 1, 2, seed);
        auto edges = g.edges();
        for (Vertex a = 0; a < 7; ++a) {
            for (Vertex b = a + 1; b < 7; ++b) {
                if (!g.has_edge(a, b)) {
                    edges.emplace_back(a, b);
                    const ExplicitGraph h(7, edges);
                    CHECK(count_labeled_bicliques(h, 2) >= count_labeled_bicliques(g, 2));
                    edges.pop_back();
                }
            }
        }
    }
}

TEST_CASE("Alon bound") {
    CHECK(alon_bound_check(triangle(), 2));
    CHECK(alon_bound_check(make(4, {}), 3));
    CHECK(alon_bound_check(complete(4), 1));
    // the comparison itself: 18 * 16 >= 81
    CHECK(alon_bound_holds(18, 3, 3, 2));
    CHECK_FALSE(alon_bound_holds(5, 3, 3, 2));
    CHECK_FALSE(alon_bound_holds(7, 4, 6, 1));
    CHECK(alon_bound_holds(8, 4, 6, 1));
    CHECK_THROWS(alon_bound_check(make(1, {}), 1));
}

TEST_CASE("density certificate examples") {
    const DensityCertificate tri = density_certificate(triangle(), 1);
    CHECK(tri.count == 6);
    CHECK(tri.bound == 1);
    CHECK(density_certificate(make(4, {}), 1).bound == 0);
    const DensityCertificate lone = density_certificate(make(3, {{0, 1}}), 1);
    CHECK(lone.count == 2);
    CHECK(lone.bound >= Rational(4, 9));
    CHECK(lone.bound - Rational(4, 9) < Rational(1, BigInt(1) << 38));
    CHECK(lone.bound >= density(make(3, {{0, 1}})));
    // t = 2 on C4: count 8 copies of K_{2,2} supports times multiplicities
    const DensityCertificate c = density_certificate(cycle4(), 2);
    CHECK(c.count == oracle::biclique_count(cycle4(), 2));
    CHECK(c.bound >= density(cycle4()));
    CHECK(c.bound <= 1);
    // the bound is a dyadic rational rounded up
    const Rational scaled = c.bound * Rational(BigInt(1) << 40);
    CHECK(scaled.get_den() == 1);
}

TEST_CASE("certificate rounds up, never below the real root") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const ExplicitGraph g = oracle::random_graph(7, 1 + seed % 3, 4, seed);
        if (g.num_edges() == 0) {
            continue;
        }
        for (std::uint32_t t = 1; t <= 2; ++t) {
            const DensityCertificate c = density_certificate(g, t);
            CHECK(c.bound >= density(g));
            // bound^{t^2} >= 2^{t^2} count / N^{2t}, exactly
            if (c.bound < 1) {
                const Rational lhs = pow_rational(c.bound, t * t);
                const Rational rhs(pow_big(2, t * t) * c.count, pow_big(7, 2 * t));
                CHECK(lhs >= rhs);
            }
        }
    }
}

TEST_CASE("certificate text block") {
    const std::string text = to_text(density_certificate(make(3, {{0, 1}}), 1));
    CHECK(text.find("t 1\n") != std::string::npos);
    CHECK(text.find("count 2\n") != std::string::npos);
    CHECK(text.find("N 3\n") != std::string::npos);
    CHECK(text.find("bound_num ") != std::string::npos);
    CHECK(text.find("bound_den ") != std::string::npos);
    CHECK(text.find("bound 0.444444444") != std::string::npos);
    CHECK(text.find("precision 40\n") != std::string::npos);
}

TEST_CASE("induced subgraph") {
    const std::vector<Vertex> three{0, 1, 2};
    const auto k3 = induced_subgraph(complete(4), three);
    CHECK(k3.graph == complete(3));
    const auto p3 = induced_subgraph(cycle4(), three);
    CHECK(p3.graph.edges() == std::vector<Edge>{{0, 1}, {1, 2}});
    const std::vector<Vertex> reordered{3, 1};
    const auto r = induced_subgraph(cycle4(), reordered);
    CHECK(r.original == reordered);
    CHECK(r.graph.num_edges() == 0);
    CHECK_THROWS(induced_subgraph(cycle4(), std::vector<Vertex>{}));
}

TEST_CASE("edge list format") {
    const ExplicitGraph g = cycle4();
    const std::string text = to_edge_list(g);
    CHECK(text == "v 4\ne 0 1\ne 0 3\ne 1 2\ne 2 3\n");
    CHECK(parse_edge_list(text) == g);
    CHECK_THROWS(parse_edge_list("e 0 1\n"));
    CHECK_THROWS(parse_edge_list("v 2\ne 0 2\n"));
    CHECK_THROWS(parse_edge_list("v 2\nx 0 1\n"));
}
