#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dksred/exact.hpp"
#include "dksred/interval.hpp"

namespace dksred {

using ElementPair = std::pair<std::uint32_t, std::uint32_t>;

/// Ground set {0..|U|-1}, a set of prohibited pairs over it, and the size r of
/// the random subset.
class PairFamily {
public:
    /// Pairs are normalized to (a, b) with a < b; loops, out-of-range elements
    /// and repeated pairs are rejected.
    PairFamily(std::uint32_t universe_size, std::vector<ElementPair> pairs, std::uint32_t r);

    std::uint32_t universe_size() const { return universe_; }
    const std::vector<ElementPair>& pairs() const { return pairs_; }
    std::uint32_t r() const { return r_; }
    /// Maximum number of pairs any element appears in.
    std::uint32_t max_multiplicity() const { return q_; }
    bool is_matching() const { return q_ <= 1; }

    PairFamily with_r(std::uint32_t r) const { return PairFamily(universe_, pairs_, r); }

private:
    std::uint32_t universe_;
    std::vector<ElementPair> pairs_;
    std::uint32_t r_;
    std::uint32_t q_ = 0;
};

/// Greedy disjoint subfamily: scan P in order, keep a pair when it shares no
/// element with pairs already kept.
std::vector<ElementPair> prune_to_matching(const PairFamily& f);

inline constexpr std::uint32_t kDefaultAvoidEnumerationLimit = 20;

/// Exact probability that a uniform r-subset of U contains no pair of P.
/// Enumerates C(|U|, r) subsets when |U| <= enumeration_limit; otherwise uses
/// inclusion-exclusion, which requires P to be a matching.
Rational exact_avoid_probability(const PairFamily& f,
                                 std::uint32_t enumeration_limit = kDefaultAvoidEnumerationLimit);

/// Probability that a fixed pair is not contained in a uniform r-subset:
/// 1 - C(|U|-2, r-2) / C(|U|, r). Requires 2 <= r <= |U|.
Rational per_pair_probability(std::uint32_t universe_size, std::uint32_t r);

/// Enclosure of exp(-|P| r^2 / (4 q |U|^2)); exactly 1 when P is empty.
Interval birthday_bound_interval(const PairFamily& f, mpfr_prec_t precision);

/// Upper endpoint of the enclosure at the given precision.
Rational birthday_bound(const PairFamily& f, mpfr_prec_t precision = kDefaultPrecision);

/// exact_avoid_probability(f) <= exp(-|P| r^2 / (4 q |U|^2)), decided with
/// escalating interval precision. Requires r >= 2.
bool birthday_bound_check(const PairFamily& f);
bool birthday_bound_check(const PairFamily& f, const Rational& exact_probability);

/// "u <size>" then "p a b" lines. An optional "r <r>" line sets r; otherwise
/// default_r is used.
PairFamily parse_family(std::string_view text, std::uint32_t default_r = 2);
std::string to_family_text(const PairFamily& f);

/// 64-bit FNV-1a digest of the family text (r excluded).
std::uint64_t family_hash(const PairFamily& f);

/// Seeded corpus of families with 2 <= |U| <= max_universe and r = 2.
std::vector<PairFamily> random_family_corpus(std::uint64_t seed, std::size_t count,
                                             std::uint32_t max_universe = 12);

struct BirthdayRow {
    std::uint64_t family_hash = 0;
    std::uint32_t universe_size = 0;
    std::size_t num_pairs = 0;
    std::uint32_t q = 0;
    std::uint32_t r = 0;
    Rational exact;
    Rational bound;  // upper endpoint at default precision
    double margin = 0;  // bound - exact, as a double
    bool bound_holds = false;
    std::size_t matching_size = 0;
    bool pruning_holds = false;  // |P'| >= |P| / (2q)
    bool product_holds = false;  // exact <= per_pair^{|P'|}
    bool monotone_r = false;     // exact(r) <= exact(r-1), vacuous at r = 2
    bool monotone_p = false;     // removing the last pair does not decrease exact
};

struct BirthdaySweep {
    std::vector<BirthdayRow> rows;
    std::size_t families = 0;
    std::size_t bound_failures = 0;
    std::size_t pruning_failures = 0;
    std::size_t product_failures = 0;
    std::size_t monotonicity_failures = 0;

    bool all_hold() const {
        return bound_failures == 0 && pruning_failures == 0 && product_failures == 0 &&
               monotonicity_failures == 0;
    }
};

/// Checks every family at every 2 <= r <= |U|.
BirthdaySweep sweep_families(const std::vector<PairFamily>& families);

/// CSV with header: family,u,pairs,q,r,exact,bound,margin,holds,matching,pruning,product.
std::string to_csv(const BirthdaySweep& sweep);

}  // namespace dksred
