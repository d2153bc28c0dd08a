#include <doctest.h>

#include "dksred/dks.hpp"
#include "dksred/reduction.hpp"
#include "oracles.hpp"

using namespace dksred;

namespace {

ExplicitGraph make(std::size_t n, std::vector<Edge> edges) { return ExplicitGraph(n, edges); }
ExplicitGraph triangle() { return make(3, {{0, 1}, {1, 2}, {0, 2}}); }
ExplicitGraph cycle4() { return make(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}); }

ExplicitGraph k5_plus_isolates() {
    std::vector<Edge> e;
    for (Vertex a = 5; a < 10; ++a) {
        for (Vertex b = a + 1; b < 10; ++b) {
            e.emplace_back(a, b);
        }
    }
    return ExplicitGraph(10, e);
}

}  // namespace

TEST_CASE("exact DkS examples") {
    const DksSolution t = exact_dks(triangle(), 2);
    CHECK(t.density == 1);
    CHECK(t.optimal);
    CHECK(t.vertices == std::vector<Vertex>{0, 1});
    const DksSolution c = exact_dks(cycle4(), 3);
    CHECK(c.density == Rational(2, 3));
    CHECK(c.vertices == std::vector<Vertex>{0, 1, 2});
    CHECK_THROWS(exact_dks(cycle4(), 1));
    CHECK_THROWS(exact_dks(cycle4(), 5));
}

TEST_CASE("exact DkS on a planted reduction graph") {
    const auto inst = gen_planted_satisfiable(5, 12, 3);
    const ReductionGraph rg(inst.formula, 2);
    const ExplicitGraph g = rg.materialize();
    const DksSolution s = exact_dks(g, to_u64(rg.clique_size()));
    CHECK(s.optimal);
    CHECK(s.density == 1);
}

TEST_CASE("exact DkS equals naive enumeration") {
    std::size_t cases = 0;
    for (std::size_t n = 2; n <= 10; ++n) {
        for (std::uint64_t seed = 0; seed < 12; ++seed) {
            const ExplicitGraph g = oracle::random_graph(n, 1 + seed % 3, 4, seed * 97 + n);
            for (std::size_t k = 2; k <= n; ++k) {
                const DksSolution s = exact_dks(g, k);
                const auto truth = oracle::dks(g, k);
                CHECK(s.optimal);
                CHECK(s.density == oracle::ratio(truth.edges, k * (k - 1) / 2));
                CHECK(s.vertices == truth.set);
                ++cases;
            }
        }
    }
    CHECK(cases > 400);
}

TEST_CASE("budget exhaustion returns the incumbent") {
    const ExplicitGraph g = oracle::random_graph(40, 1, 2, 5);
    DksBudget tiny;
    tiny.max_nodes = 10;
    const DksSolution s = exact_dks(g, 12, tiny);
    CHECK_FALSE(s.optimal);
    CHECK(s.k() == 12);
    CHECK(s.density == density(g, s.vertices));
}

TEST_CASE("heuristics") {
    const ExplicitGraph g = k5_plus_isolates();
    CHECK(greedy_peel(g, 5).density == 1);
    CHECK(neighborhood_greedy(g, 5, 0.5).density == 1);
    CHECK(greedy_peel(cycle4(), 3).density == Rational(2, 3));
    CHECK(neighborhood_greedy(cycle4(), 3, 1.0).density == Rational(2, 3));
    CHECK_THROWS(neighborhood_greedy(cycle4(), 3, 0.0));
    CHECK_THROWS(neighborhood_greedy(cycle4(), 3, 1.5));
    CHECK_FALSE(greedy_peel(g, 5).optimal);
}

TEST_CASE("heuristics never beat the optimum and report their own density") {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        const std::size_t n = 5 + seed % 6;
        const ExplicitGraph g = oracle::random_graph(n, 1 + seed % 3, 4, seed);
        const std::size_t k = 2 + seed % (n - 2);
        const DksSolution best = exact_dks(g, k);
        for (const DksSolution& h :
             {greedy_peel(g, k), neighborhood_greedy(g, k, 0.5),
              local_search_swap(g, greedy_peel(g, k), 100)}) {
            CHECK(h.k() == k);
            CHECK(h.density <= best.density);
            CHECK(h.density == density(g, h.vertices));
        }
    }
}

TEST_CASE("local search") {
    const DksSolution opt = exact_dks(cycle4(), 3);
    const DksSolution same = local_search_swap(cycle4(), opt, 10);
    CHECK(same.vertices == opt.vertices);

    DksSolution start;
    start.vertices = {0, 2, 3};
    const DksSolution reached = local_search_swap(cycle4(), start, 10);
    CHECK(reached.density == Rational(2, 3));

    // one edge to start, then a monotone climb into the K5
    const ExplicitGraph g = k5_plus_isolates();
    DksSolution bad;
    bad.vertices = {0, 1, 2, 5, 6};
    LocalSearchTrace trace;
    const DksSolution climbed = local_search_swap(g, bad, 100, &trace);
    CHECK(climbed.density == 1);
    REQUIRE(trace.densities.size() >= 2);
    for (std::size_t i = 1; i < trace.densities.size(); ++i) {
        CHECK(trace.densities[i] >= trace.densities[i - 1]);
    }
    DksSolution invalid;
    invalid.vertices = {0, 0, 1};
    CHECK_THROWS(local_search_swap(g, invalid, 1));
}

TEST_CASE("solution text") {
    const DksSolution s = exact_dks(cycle4(), 3);
    CHECK(to_text(s) == "k 3 density 2/3 optimal 1\n0 1 2\n");
}
