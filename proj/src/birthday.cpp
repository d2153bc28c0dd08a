#include "dksred/birthday.hpp"

#include <algorithm>
#include <cstdio>
#include <set>
#include <sstream>
#include <stdexcept>

#include "dksred/rng.hpp"

namespace dksred {

PairFamily::PairFamily(std::uint32_t universe_size, std::vector<ElementPair> pairs, std::uint32_t r)
    : universe_(universe_size), pairs_(std::move(pairs)), r_(r) {
    if (r_ > universe_) {
        throw std::invalid_argument("pair family: r = " + std::to_string(r_) + " exceeds |U| = " +
                                    std::to_string(universe_));
    }
    std::set<ElementPair> seen;
    std::vector<std::uint32_t> mult(universe_, 0);
    for (auto& [a, b] : pairs_) {
        if (a == b) {
            throw std::invalid_argument("pair family: pair with equal elements");
        }
        if (a > b) {
            std::swap(a, b);
        }
        if (b >= universe_) {
            throw std::invalid_argument("pair family: element " + std::to_string(b) +
                                        " outside U");
        }
        if (!seen.insert({a, b}).second) {
            throw std::invalid_argument("pair family: repeated pair {" + std::to_string(a) + ", " +
                                        std::to_string(b) + "}");
        }
        q_ = std::max(q_, ++mult[a]);
        q_ = std::max(q_, ++mult[b]);
    }
}

std::vector<ElementPair> prune_to_matching(const PairFamily& f) {
    std::vector<bool> used(f.universe_size(), false);
    std::vector<ElementPair> out;
    for (const auto& [a, b] : f.pairs()) {
        if (!used[a] && !used[b]) {
            used[a] = true;
            used[b] = true;
            out.emplace_back(a, b);
        }
    }
    return out;
}

namespace {

std::vector<std::uint64_t> pair_masks(const PairFamily& f) {
    std::vector<std::uint64_t> masks;
    masks.reserve(f.pairs().size());
    for (const auto& [a, b] : f.pairs()) {
        masks.push_back((std::uint64_t{1} << a) | (std::uint64_t{1} << b));
    }
    return masks;
}

bool avoids(std::uint64_t subset, const std::vector<std::uint64_t>& masks) {
    return std::none_of(masks.begin(), masks.end(),
                        [&](std::uint64_t m) { return (subset & m) == m; });
}

}  // namespace

Rational exact_avoid_probability(const PairFamily& f, std::uint32_t enumeration_limit) {
    const std::uint32_t u = f.universe_size();
    const std::uint32_t r = f.r();
    const BigInt total = binomial(u, r);
    if (u <= enumeration_limit && u < 64) {
        const auto masks = pair_masks(f);
        std::uint64_t good = 0;
        if (r == 0) {
            good = 1;
        } else {
            // Gosper's hack over r-subsets of u bits
            std::uint64_t s = (std::uint64_t{1} << r) - 1;
            const std::uint64_t limit = std::uint64_t{1} << u;
            while (s < limit) {
                if (avoids(s, masks)) {
                    ++good;
                }
                const std::uint64_t c = s & (~s + 1);
                const std::uint64_t rr = s + c;
                s = (((rr ^ s) >> 2) / c) | rr;
            }
        }
        Rational out(BigInt(static_cast<unsigned long>(good)), total);
        out.canonicalize();
        return out;
    }
    if (!f.is_matching()) {
        throw BudgetExceeded("exact_avoid_probability: |U| = " + std::to_string(u) +
                             " above the enumeration limit and P is not a matching");
    }
    const std::uint64_t m = f.pairs().size();
    BigInt good = 0;
    for (std::uint64_t j = 0; j <= m && 2 * j <= r; ++j) {
        const BigInt term = binomial(m, j) * binomial(u - 2 * j, r - 2 * j);
        if (j % 2 == 0) {
            good += term;
        } else {
            good -= term;
        }
    }
    Rational out(good, total);
    out.canonicalize();
    return out;
}

Rational per_pair_probability(std::uint32_t universe_size, std::uint32_t r) {
    if (r < 2 || r > universe_size) {
        throw std::invalid_argument("per_pair_probability needs 2 <= r <= |U|");
    }
    Rational contained(binomial(universe_size - 2, r - 2), binomial(universe_size, r));
    contained.canonicalize();
    return Rational(1) - contained;
}

Interval birthday_bound_interval(const PairFamily& f, mpfr_prec_t precision) {
    if (f.pairs().empty()) {
        return Interval(Rational(1), precision);
    }
    const BigInt u(static_cast<unsigned long>(f.universe_size()));
    const BigInt r(static_cast<unsigned long>(f.r()));
    Rational exponent(BigInt(static_cast<unsigned long>(f.pairs().size())) * r * r,
                      4 * BigInt(static_cast<unsigned long>(f.max_multiplicity())) * u * u);
    exponent.canonicalize();
    return Interval(Rational(-exponent), precision).exp();
}

Rational birthday_bound(const PairFamily& f, mpfr_prec_t precision) {
    return birthday_bound_interval(f, precision).upper_rational();
}

bool birthday_bound_check(const PairFamily& f, const Rational& exact_probability) {
    if (f.r() < 2) {
        throw std::invalid_argument("birthday bound needs r >= 2");
    }
    const auto verdict = decide_le(exact_probability, [&](mpfr_prec_t p) {
        return birthday_bound_interval(f, p);
    });
    // undecided at the precision cap counts as a failure
    return verdict.value_or(false);
}

bool birthday_bound_check(const PairFamily& f) {
    return birthday_bound_check(f, exact_avoid_probability(f));
}

PairFamily parse_family(std::string_view text, std::uint32_t default_r) {
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    bool have_u = false;
    std::uint64_t u = 0;
    std::uint64_t r = default_r;
    std::vector<ElementPair> pairs;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag) || tag[0] == '#') {
            continue;
        }
        const auto fail = [&](const std::string& what) {
            return std::invalid_argument("family line " + std::to_string(line_no) + ": " + what);
        };
        if (tag == "u") {
            if (have_u || !(ls >> u)) {
                throw fail("bad 'u <size>' header");
            }
            have_u = true;
        } else if (tag == "r") {
            if (!(ls >> r)) {
                throw fail("bad 'r <r>' line");
            }
        } else if (tag == "p") {
            std::uint64_t a = 0;
            std::uint64_t b = 0;
            if (!have_u || !(ls >> a >> b)) {
                throw fail("bad pair");
            }
            pairs.emplace_back(static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b));
        } else {
            throw fail("unknown record '" + tag + "'");
        }
    }
    if (!have_u) {
        throw std::invalid_argument("family: missing 'u <size>' header");
    }
    return PairFamily(static_cast<std::uint32_t>(u), std::move(pairs),
                      static_cast<std::uint32_t>(r));
}

std::string to_family_text(const PairFamily& f) {
    std::ostringstream out;
    out << "u " << f.universe_size() << '\n';
    for (const auto& [a, b] : f.pairs()) {
        out << "p " << a << ' ' << b << '\n';
    }
    return out.str();
}

std::uint64_t family_hash(const PairFamily& f) { return fnv1a64(to_family_text(f)); }

std::vector<PairFamily> random_family_corpus(std::uint64_t seed, std::size_t count,
                                             std::uint32_t max_universe) {
    if (max_universe < 2 || max_universe > 20) {
        throw std::invalid_argument("family corpus needs 2 <= max_universe <= 20");
    }
    Rng rng(seed);
    std::vector<PairFamily> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const auto u = static_cast<std::uint32_t>(rng.between(2, max_universe));
        // pair density in eighths, 0..8
        const std::uint64_t eighths = rng.below(9);
        std::vector<ElementPair> pairs;
        for (std::uint32_t a = 0; a < u; ++a) {
            for (std::uint32_t b = a + 1; b < u; ++b) {
                if (rng.bernoulli(eighths, 8)) {
                    pairs.emplace_back(a, b);
                }
            }
        }
        for (std::size_t k = pairs.size(); k > 1; --k) {
            std::swap(pairs[k - 1], pairs[rng.below(k)]);
        }
        out.emplace_back(u, std::move(pairs), 2);
    }
    return out;
}

BirthdaySweep sweep_families(const std::vector<PairFamily>& families) {
    BirthdaySweep sweep;
    sweep.families = families.size();
    for (const PairFamily& base : families) {
        const auto matching = prune_to_matching(base);
        const std::uint64_t hash = family_hash(base);
        std::vector<ElementPair> fewer(base.pairs());
        if (!fewer.empty()) {
            fewer.pop_back();
        }
        Rational previous;
        for (std::uint32_t r = 2; r <= base.universe_size(); ++r) {
            const PairFamily f = base.with_r(r);
            BirthdayRow row;
            row.family_hash = hash;
            row.universe_size = f.universe_size();
            row.num_pairs = f.pairs().size();
            row.q = f.max_multiplicity();
            row.r = r;
            row.exact = exact_avoid_probability(f);
            row.bound = birthday_bound(f);
            row.margin = to_double(row.bound) - to_double(row.exact);
            row.bound_holds = birthday_bound_check(f, row.exact);
            row.matching_size = matching.size();
            row.pruning_holds = 2 * static_cast<std::uint64_t>(row.q) * row.matching_size >=
                                row.num_pairs;
            row.product_holds =
                row.exact <= pow_rational(per_pair_probability(f.universe_size(), r),
                                          row.matching_size);
            row.monotone_r = r == 2 || row.exact <= previous;
            const PairFamily smaller(f.universe_size(), fewer, r);
            row.monotone_p = row.exact <= exact_avoid_probability(smaller);
            previous = row.exact;

            sweep.bound_failures += row.bound_holds ? 0 : 1;
            sweep.pruning_failures += row.pruning_holds ? 0 : 1;
            sweep.product_failures += row.product_holds ? 0 : 1;
            sweep.monotonicity_failures += (row.monotone_r && row.monotone_p) ? 0 : 1;
            sweep.rows.push_back(std::move(row));
        }
    }
    return sweep;
}

std::string to_csv(const BirthdaySweep& sweep) {
    std::ostringstream out;
    out << "family,u,pairs,q,r,exact,bound,margin,holds,matching,pruning,product\n";
    char hash[32];
    char margin[64];
    char bound[64];
    for (const auto& row : sweep.rows) {
        std::snprintf(hash, sizeof(hash), "%016llx",
                      static_cast<unsigned long long>(row.family_hash));
        std::snprintf(margin, sizeof(margin), "%.9g", row.margin);
        std::snprintf(bound, sizeof(bound), "%.12g", to_double(row.bound));
        out << hash << ',' << row.universe_size << ',' << row.num_pairs << ',' << row.q << ','
            << row.r << ',' << fraction_string(row.exact) << ',' << bound << ',' << margin << ','
            << (row.bound_holds ? 1 : 0) << ',' << row.matching_size << ','
            << (row.pruning_holds ? 1 : 0) << ',' << (row.product_holds ? 1 : 0) << '\n';
    }
    return out.str();
}

}  // namespace dksred
