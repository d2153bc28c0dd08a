#include <doctest.h>

#include <cmath>

#include "dksred/birthday.hpp"
#include "oracles.hpp"

using namespace dksred;

TEST_CASE("prune to matching") {
    const PairFamily path(4, {{0, 1}, {1, 2}, {2, 3}}, 2);
    CHECK(path.max_multiplicity() == 2);
    const auto kept = prune_to_matching(path);
    CHECK(kept == std::vector<ElementPair>{{0, 1}, {2, 3}});
    CHECK(4 * kept.size() >= 3);

    const PairFamily matching(6, {{0, 1}, {4, 5}}, 2);
    CHECK(matching.is_matching());
    CHECK(prune_to_matching(matching) == matching.pairs());
    CHECK(prune_to_matching(PairFamily(3, {}, 2)).empty());
}

TEST_CASE("family validation") {
    CHECK_THROWS(PairFamily(3, {{1, 1}}, 2));
    CHECK_THROWS(PairFamily(3, {{0, 3}}, 2));
    CHECK_THROWS(PairFamily(3, {{0, 1}, {1, 0}}, 2));
    CHECK_THROWS(PairFamily(3, {}, 4));
    const PairFamily f(3, {{2, 0}}, 2);
    CHECK(f.pairs() == std::vector<ElementPair>{{0, 2}});
}

TEST_CASE("exact avoidance probabilities") {
    CHECK(exact_avoid_probability(PairFamily(4, {{0, 1}}, 2)) == Rational(5, 6));
    CHECK(exact_avoid_probability(PairFamily(4, {{0, 1}, {2, 3}}, 2)) == Rational(2, 3));
    CHECK(exact_avoid_probability(PairFamily(4, {}, 2)) == 1);
    CHECK(exact_avoid_probability(PairFamily(5, {{0, 1}}, 0)) == 1);
}

TEST_CASE("closed form for matchings agrees with enumeration") {
    for (std::uint32_t u = 2; u <= 14; ++u) {
        for (std::uint32_t pairs = 0; 2 * pairs <= u; ++pairs) {
            std::vector<ElementPair> p;
            for (std::uint32_t i = 0; i < pairs; ++i) {
                p.emplace_back(2 * i, 2 * i + 1);
            }
            for (std::uint32_t r = 0; r <= u; ++r) {
                const PairFamily f(u, p, r);
                const Rational enumerated = exact_avoid_probability(f, 20);
                const Rational closed = exact_avoid_probability(f, 0);
                CHECK(enumerated == closed);
                const auto [good, total] = oracle::avoid_count(u, p, r);
                CHECK(enumerated == oracle::ratio(good, total));
            }
        }
    }
    CHECK_THROWS_AS(exact_avoid_probability(PairFamily(22, {{0, 1}, {1, 2}}, 3)), BudgetExceeded);
    // a matching above the enumeration limit uses the closed form
    CHECK(exact_avoid_probability(PairFamily(40, {{0, 1}}, 2)) ==
          Rational(1) - Rational(1, 780));
}

TEST_CASE("avoidance equals the mask oracle on random families") {
    const auto corpus = random_family_corpus(9, 60, 10);
    for (const auto& f : corpus) {
        for (std::uint32_t r = 0; r <= f.universe_size(); ++r) {
            const auto [good, total] = oracle::avoid_count(f.universe_size(), f.pairs(), r);
            CHECK(exact_avoid_probability(f.with_r(r)) ==
                  oracle::ratio(good, total));
        }
    }
}

TEST_CASE("per-pair probability") {
    CHECK(per_pair_probability(4, 2) == Rational(5, 6));
    CHECK(per_pair_probability(10, 2) == Rational(44, 45));
    CHECK(per_pair_probability(7, 7) == 0);
    for (std::uint32_t u = 2; u <= 15; ++u) {
        for (std::uint32_t r = 2; r <= u; ++r) {
            CHECK(per_pair_probability(u, r) ==
                  Rational(1) - oracle::ratio(r * (r - 1), u * (u - 1)));
        }
    }
    CHECK_THROWS(per_pair_probability(4, 1));
    CHECK_THROWS(per_pair_probability(4, 5));
}

TEST_CASE("birthday bound examples") {
    const PairFamily one(4, {{0, 1}}, 2);
    CHECK(std::abs(to_double(birthday_bound(one)) - std::exp(-1.0 / 16)) < 1e-12);
    CHECK(birthday_bound_check(one));
    const PairFamily two(4, {{0, 1}, {2, 3}}, 2);
    CHECK(std::abs(to_double(birthday_bound(two)) - std::exp(-1.0 / 8)) < 1e-12);
    CHECK(birthday_bound_check(two));
    const PairFamily none(4, {}, 2);
    CHECK(birthday_bound(none) == 1);
    CHECK(birthday_bound_check(none));
    CHECK_THROWS(birthday_bound_check(PairFamily(4, {{0, 1}}, 1)));
    // a made-up probability above the bound is rejected
    CHECK_FALSE(birthday_bound_check(one, Rational(19, 20)));
}

TEST_CASE("family text format") {
    const PairFamily f = parse_family("# comment\nu 5\np 0 1\np 3 2\nr 3\n");
    CHECK(f.universe_size() == 5);
    CHECK(f.r() == 3);
    CHECK(f.pairs() == std::vector<ElementPair>{{0, 1}, {2, 3}});
    CHECK(to_family_text(f) == "u 5\np 0 1\np 2 3\n");
    CHECK(parse_family(to_family_text(f)).pairs() == f.pairs());
    CHECK(family_hash(f) == family_hash(f.with_r(2)));
    CHECK_THROWS(parse_family("p 0 1\n"));
    CHECK_THROWS(parse_family("u 3\nq 0 1\n"));
    CHECK_THROWS(parse_family("u 3\np 0\n"));
}

TEST_CASE("sweep on a small corpus") {
    const auto corpus = random_family_corpus(3, 80, 9);
    CHECK(corpus.size() == 80);
    const BirthdaySweep sweep = sweep_families(corpus);
    CHECK(sweep.all_hold());
    for (const auto& row : sweep.rows) {
        CHECK(row.exact <= row.bound);
    }
    const std::string csv = to_csv(sweep);
    CHECK(csv.rfind("family,u,pairs,q,r,exact,bound,margin,holds,matching,pruning,product\n", 0) ==
          0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == static_cast<long>(sweep.rows.size() + 1));
    // deterministic
    CHECK(to_csv(sweep_families(random_family_corpus(3, 80, 9))) == csv);
}
