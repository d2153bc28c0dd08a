#include <doctest.h>

#include <sstream>

#include "dksred/reduction.hpp"
#include "dksred/rng.hpp"
#include "oracles.hpp"

using namespace dksred;

namespace {

PartialVertex pv(std::vector<std::uint32_t> vars, std::vector<bool> bits) {
    return PartialVertex{std::move(vars), std::move(bits)};
}

CnfFormula one_clause(std::uint32_t n) {
    return CnfFormula(n, {Clause{{1, false}, {2, false}, {3, false}}});
}

}  // namespace

TEST_CASE("vertex_count") {
    CHECK(vertex_count(4, 2) == 24);
    CHECK(vertex_count(7, 0) == 1);
    CHECK(vertex_count(3, 1) == 6);
    CHECK(vertex_count(100, 10) == BigInt("17725756883394560"));
    CHECK_THROWS(vertex_count(3, 4));
}

TEST_CASE("numbering examples") {
    const ReductionGraph g(one_clause(4), 2);
    CHECK(g.unrank(std::uint64_t{0}) == pv({1, 2}, {false, false}));
    CHECK(g.unrank(std::uint64_t{4}) == pv({1, 3}, {false, false}));
    CHECK(g.unrank(std::uint64_t{3}) == pv({1, 2}, {true, true}));
    CHECK(g.unrank(std::uint64_t{6}) == pv({1, 3}, {true, false}));
    CHECK(g.unrank(std::uint64_t{23}) == pv({3, 4}, {true, true}));
    CHECK_THROWS(g.unrank(std::uint64_t{24}));
    CHECK_THROWS(g.unrank(BigInt(-1)));
    CHECK_THROWS(g.rank(pv({2, 1}, {false, false})));
    CHECK_THROWS(g.rank(pv({1}, {false})));
    CHECK_THROWS(g.rank(pv({1, 5}, {false, false})));
    CHECK(to_string(g.unrank(std::uint64_t{6})) == "1,3 10");
}

TEST_CASE("numbering matches the documented listing") {
    for (std::uint32_t n = 1; n <= 12; ++n) {
        for (std::uint32_t ell = 1; ell <= std::min(n, 3U); ++ell) {
            const ReductionGraph g(CnfFormula(n, {}), ell);
            const auto listing = oracle::vertex_listing(n, ell);
            REQUIRE(BigInt(static_cast<unsigned long>(listing.size())) == g.num_vertices());
            for (std::size_t i = 0; i < listing.size(); ++i) {
                CHECK(g.unrank(static_cast<std::uint64_t>(i)) == listing[i]);
                CHECK(g.rank(listing[i]) == static_cast<unsigned long>(i));
            }
        }
    }
}

TEST_CASE("big-integer numbering") {
    const ReductionGraph g(CnfFormula(100, {}), 10);
    CHECK(g.num_vertices() == BigInt("17725756883394560"));
    const BigInt last = g.num_vertices() - 1;
    const PartialVertex v = g.unrank(last);
    CHECK(v.vars == std::vector<std::uint32_t>{91, 92, 93, 94, 95, 96, 97, 98, 99, 100});
    CHECK(g.rank(v) == last);
    const BigInt mid("8862878441697281");
    CHECK(g.rank(g.unrank(mid)) == mid);
}

TEST_CASE("consistency") {
    CHECK_FALSE(consistent(pv({1}, {false}), pv({1}, {true})));
    CHECK(consistent(pv({1}, {false}), pv({2}, {true})));
    const PartialVertex u = pv({1, 3}, {true, false});
    CHECK(consistent(u, u));
}

TEST_CASE("edge predicate examples") {
    const ReductionGraph g(one_clause(4), 2);
    CHECK_FALSE(g.edge(pv({1, 2}, {false, false}), pv({3, 4}, {false, false})));
    CHECK(g.edge(pv({1, 2}, {true, false}), pv({3, 4}, {false, true})));
    CHECK(g.edge(pv({1, 2}, {false, false}), pv({2, 4}, {false, false})));
    CHECK_FALSE(g.edge(pv({1, 2}, {false, false}), pv({1, 2}, {false, false})));
    CHECK_FALSE(g.edge(pv({1, 2}, {false, false}), pv({2, 3}, {true, true})));
}

TEST_CASE("edge predicate equals the direct rule") {
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
        const std::uint32_t n = 3 + static_cast<std::uint32_t>(seed % 4);
        const CnfFormula phi = gen_random_3sat(n, 2 * n, seed);
        for (std::uint32_t ell = 1; ell <= std::min(n, 3U); ++ell) {
            const ReductionGraph g(phi, ell);
            const auto verts = g.vertices();
            const ExplicitGraph x = g.materialize();
            const auto adj = oracle::adjacency_matrix(x);
            for (std::size_t i = 0; i < verts.size(); ++i) {
                for (std::size_t j = 0; j < verts.size(); ++j) {
                    const bool expect = oracle::edge(phi, verts[i], verts[j]);
                    CHECK(g.edge(verts[i], verts[j]) == expect);
                    CHECK(adj[i][j] == expect);
                    CHECK(adj[i][j] == adj[j][i]);
                }
                CHECK_FALSE(adj[i][i]);
            }
        }
    }
}

TEST_CASE("a falsified covered clause stays falsified for supersets") {
    const CnfFormula phi = gen_random_3sat(7, 20, 5);
    const ReductionGraph g2(phi, 2);
    const ReductionGraph g3(phi, 3);
    Rng rng(11);
    std::size_t checked = 0;
    const auto verts2 = g2.vertices();
    for (int trial = 0; trial < 4000 && checked < 200; ++trial) {
        const auto& u = verts2[rng.below(verts2.size())];
        const auto& v = verts2[rng.below(verts2.size())];
        if (!consistent(u, v) || u == v || g2.edge(u, v)) {
            continue;
        }
        // extend u by one fresh variable with a random bit
        std::uint32_t extra = 0;
        for (std::uint32_t x = 1; x <= 7; ++x) {
            if (std::find(u.vars.begin(), u.vars.end(), x) == u.vars.end() &&
                std::find(v.vars.begin(), v.vars.end(), x) == v.vars.end()) {
                extra = x;
                break;
            }
        }
        REQUIRE(extra != 0);
        PartialVertex bigger = u;
        const auto at = std::lower_bound(bigger.vars.begin(), bigger.vars.end(), extra);
        const auto offset = at - bigger.vars.begin();
        bigger.vars.insert(at, extra);
        bigger.bits.insert(bigger.bits.begin() + offset, rng.coin());
        PartialVertex other = v;
        // pad v as well so both have three variables
        for (std::uint32_t x = 1; x <= 7; ++x) {
            if (std::find(other.vars.begin(), other.vars.end(), x) == other.vars.end() &&
                x != extra) {
                const auto p = std::lower_bound(other.vars.begin(), other.vars.end(), x);
                const auto off = p - other.vars.begin();
                other.vars.insert(p, x);
                const auto in_big = std::find(bigger.vars.begin(), bigger.vars.end(), x);
                const bool bit = in_big != bigger.vars.end()
                                     ? static_cast<bool>(bigger.bits[in_big - bigger.vars.begin()])
                                     : rng.coin();
                other.bits.insert(other.bits.begin() + off, bit);
                break;
            }
        }
        CHECK_FALSE(g3.edge(bigger, other));
        ++checked;
    }
    CHECK(checked > 50);
}

TEST_CASE("clique witness") {
    const CnfFormula phi(3, {Clause{{1, false}, {2, false}, {3, false}}});
    const ReductionGraph g(phi, 2);
    const FullAssignment ones{{true, true, true}};
    const auto w = g.clique_witness(ones);
    CHECK(w.size() == 3);
    const ExplicitGraph x = g.materialize();
    std::vector<Vertex> idx;
    for (const auto& v : w) {
        idx.push_back(static_cast<Vertex>(to_u64(g.rank(v))));
    }
    CHECK(density(x, idx) == 1);
    CHECK(x.num_vertices() == 12);
    CHECK_THROWS(g.clique_witness(FullAssignment{{false, false, false}}));
    CHECK_THROWS(g.clique_witness(FullAssignment{{true, true}}));

    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto inst = gen_planted_satisfiable(4 + static_cast<std::uint32_t>(seed % 5), 12, seed);
        for (std::uint32_t ell = 1; ell <= 3; ++ell) {
            const ReductionGraph rg(inst.formula, ell);
            const auto wit = rg.clique_witness(inst.assignment);
            CHECK(BigInt(static_cast<unsigned long>(wit.size())) == rg.clique_size());
            for (std::size_t i = 0; i < wit.size(); ++i) {
                for (std::size_t j = i + 1; j < wit.size(); ++j) {
                    CHECK(oracle::edge(inst.formula, wit[i], wit[j]));
                }
            }
        }
    }
}

TEST_CASE("materialize") {
    // n = 3, ell = 2, satisfiable: 12 vertices, 66 pairs enumerated by the oracle
    const CnfFormula phi(3, {Clause{{1, false}, {2, false}, {3, false}}});
    const ReductionGraph g(phi, 2);
    const ExplicitGraph x = g.materialize();
    const auto verts = oracle::vertex_listing(3, 2);
    std::size_t expected = 0;
    for (std::size_t i = 0; i < verts.size(); ++i) {
        for (std::size_t j = i + 1; j < verts.size(); ++j) {
            expected += oracle::edge(phi, verts[i], verts[j]) ? 1 : 0;
        }
    }
    CHECK(x.num_edges() == expected);

    // ell = n: consistency forces u = v, so no edges
    const ReductionGraph full(gen_random_3sat(4, 6, 2), 4);
    const ExplicitGraph y = full.materialize();
    CHECK(y.num_vertices() == 16);
    CHECK(y.num_edges() == 0);

    CHECK_THROWS_AS(ReductionGraph(CnfFormula(20, {}), 5).materialize(), BudgetExceeded);
    CHECK_THROWS(ReductionGraph(CnfFormula(3, {}), 0));
    CHECK_THROWS(ReductionGraph(CnfFormula(3, {}), 4));
    CHECK(ReductionGraph(CnfFormula(6, {}), 3).within_recommended_range());
    CHECK_FALSE(ReductionGraph(CnfFormula(6, {}), 4).within_recommended_range());
}

TEST_CASE("vertex legend") {
    const ReductionGraph g(CnfFormula(3, {}), 1);
    std::ostringstream out;
    write_vertex_legend(out, g);
    CHECK(out.str() == "0 1 0\n1 1 1\n2 2 0\n3 2 1\n4 3 0\n5 3 1\n");
}

TEST_CASE("non-boolean counterexample witness") {
    const NonBooleanCsp csp = gen_counterexample_csp(24, 3, 1, 2);
    const CspBicliqueWitness w = counterexample_biclique(csp, 1);
    CHECK(w.certified_size == 27);
    CHECK(w.target_size == 24);
    CHECK(w.size_claim_applies);
    CHECK(w.sides_meet_certified);
    CHECK(w.certified_meets_target);
    // ell = 1: every single-variable vertex is constraint free
    CHECK(w.left.size() == 36);
    CHECK(w.right.size() == 36);
    const CspReductionGraph g(csp, 1);
    CHECK(g.num_vertices() == 72);
    CHECK(verify_biclique(g, w));

    // ell = 2: sides are counted exactly and meet the certified size
    const CspBicliqueWitness w2 = counterexample_biclique(csp, 2);
    CHECK(w2.certified_size == 9 * binomial(12 - 6, 2));
    CHECK_FALSE(w2.size_claim_applies);
    CHECK(w2.sides_meet_certified);
    CHECK(verify_biclique(CspReductionGraph(csp, 2), w2));

    CHECK_THROWS(counterexample_biclique(csp, 0));
    CHECK_THROWS(counterexample_biclique(csp, 13));
    CHECK_THROWS(CspReductionGraph(csp, 0));
}

TEST_CASE("non-boolean edge predicate") {
    const NonBooleanCsp csp(4, 3, {{1, 2, 1}, {3, 4, 0}});
    const CspReductionGraph g(csp, 1);
    const auto v = [](std::uint32_t x, std::uint32_t a) { return CspVertex{{x}, {a}}; };
    CHECK(g.edge(v(1, 2), v(2, 1)));
    CHECK_FALSE(g.edge(v(1, 2), v(2, 2)));
    CHECK_FALSE(g.edge(v(1, 0), v(1, 1)));
    CHECK_FALSE(g.edge(v(1, 0), v(1, 0)));
    CHECK(g.edge(v(1, 0), v(3, 2)));
}
