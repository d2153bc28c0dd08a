#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dksred/exact.hpp"
#include "dksred/formula.hpp"
#include "dksred/graph.hpp"
#include "dksred/interval.hpp"
#include "dksred/reduction.hpp"

namespace dksred {

/// A subset of the single-variable assignments {(x1,0),(x1,1),...,(xn,0),(xn,1)}.
/// (x, b) is stored at position 2(x-1)+b.
class AssignmentSet {
public:
    AssignmentSet() = default;
    explicit AssignmentSet(std::uint32_t num_vars)
        : n_(num_vars), words_((2 * static_cast<std::size_t>(num_vars) + 63) / 64, 0) {}

    std::uint32_t num_vars() const { return n_; }
    void insert(std::uint32_t var, bool bit);
    bool contains(std::uint32_t var, bool bit) const;
    std::size_t size() const;
    void merge(const PartialVertex& v);
    bool contains_all(const PartialVertex& v) const;

    /// "x1=0 x3=1" style, in variable order.
    std::string to_string() const;
    /// 16 hex digits of FNV-1a over to_string().
    std::string digest() const;

    friend bool operator==(const AssignmentSet&, const AssignmentSet&) = default;
    friend auto operator<=>(const AssignmentSet&, const AssignmentSet&) = default;

private:
    std::uint32_t n_ = 0;
    std::vector<std::uint64_t> words_;
};

/// Union of the vertices' assignments.
AssignmentSet flatten(std::span<const PartialVertex> tuple, std::uint32_t num_vars);

enum class VarClass { terrible, good, bad, conflicted };

std::string_view to_string(VarClass c);

struct AssignmentPair {
    AssignmentSet a;
    AssignmentSet b;
    std::vector<VarClass> tags;  // tags[x-1]
    /// Some (x, b) in A with (x, not b) in B, or the reverse; the biclique
    /// class of (A, B) is then empty.
    bool conflicted = false;
    std::vector<std::uint32_t> terrible;
    std::vector<std::uint32_t> good;
    std::vector<std::uint32_t> bad;
    /// Clauses whose variables are all good, and those falsified by the
    /// assignment f(x) = b iff (x, b) in A and B.
    std::vector<std::uint32_t> good_clauses;
    std::vector<std::uint32_t> unsat_clauses;
};

AssignmentPair classify(const AssignmentSet& a, const AssignmentSet& b, const CnfFormula& phi);

struct KttClass {
    AssignmentSet a;
    AssignmentSet b;
    BigInt count;
    /// Vertices seen in some L (resp. R) of this class.
    std::vector<Vertex> left_vertices;
    std::vector<Vertex> right_vertices;
};

struct KttEnumeration {
    std::uint32_t t = 0;
    std::vector<KttClass> classes;  // sorted by (A, B)
    BigInt total;                   // number of (L, R) enumerated
};

inline constexpr std::uint64_t kDefaultBicliqueEnumerationBudget = 50'000'000;

/// Enumerates every labelled K_{t,t} of the materialized graph and groups the
/// copies by (flatten(L), flatten(R)). Throws BudgetExceeded past `budget` copies.
KttEnumeration enumerate_ktt_classes(const ReductionGraph& rg, const ExplicitGraph& g,
                                     std::uint32_t t,
                                     std::uint64_t budget = kDefaultBicliqueEnumerationBudget);

/// Count for one (A, B) from an enumeration; zero when the class was not observed.
BigInt ktt_count(const KttEnumeration& e, const AssignmentSet& a, const AssignmentSet& b);

struct PartitionCheck {
    BigInt class_sum;
    BigInt direct_count;
    bool holds = false;
};

/// Sum over classes equals the direct labelled K_{t,t} count.
PartitionCheck partition_check(const KttEnumeration& e, const ExplicitGraph& g);

struct ContainmentCheck {
    std::size_t classes_checked = 0;
    std::size_t vertex_violations = 0;  // a vertex of L (R) not an ell-subset of A (B)
    std::size_t count_violations = 0;   // count > C(|A|, ell)^t C(|B|, ell)^t
    std::size_t conflicted_nonempty = 0;
    bool holds() const {
        return vertex_violations == 0 && count_violations == 0 && conflicted_nonempty == 0;
    }
};

ContainmentCheck containment_check(const KttEnumeration& e, const ReductionGraph& rg);

struct ProhibitedPairCheck {
    std::size_t classes_checked = 0;
    std::size_t all_good_classes = 0;
    std::size_t classes_with_unsat = 0;
    std::size_t violations = 0;  // vertex holding two variables of an unsatisfied good clause
    std::size_t all_good_violations = 0;
};

/// For every observed class, no vertex of L or R contains two distinct
/// variables of a clause in the unsatisfied good-clause set.
ProhibitedPairCheck prohibited_pair_check(const KttEnumeration& e, const ReductionGraph& rg);

/// C(a, ell) C(b, ell) <= C(n, ell)^2. Requires a + b <= 2n and ell <= n.
bool binomial_product_check(std::uint32_t size_a, std::uint32_t size_b, std::uint32_t ell,
                            std::uint32_t n);

struct BinomialScan {
    std::uint64_t configurations = 0;
    std::uint64_t falsifications = 0;
};

/// All n <= max_n, ell <= n, a + b <= 2n with a, b <= 2n.
BinomialScan binomial_product_scan(std::uint32_t max_n);

// ---------------------------------------------------------------------------
// Parameters

enum class LambdaBranch { log_term, beta_over_64, eps_over_384d };

std::string_view to_string(LambdaBranch b);

struct SoundnessParams {
    Rational eps;
    std::uint32_t d = 0;
    std::uint32_t n = 0;
    std::uint32_t ell = 0;
    Rational beta;                       // eps / (100 d)
    Interval log_branch;                 // -log2(1 - beta/2)
    Rational beta_branch;                // beta / 64
    Rational eps_branch;                 // eps / (384 d)
    LambdaBranch branch = LambdaBranch::beta_over_64;
    Interval lambda;
    std::optional<Rational> lambda_exact;  // set when a rational branch wins
    Interval delta;                      // lambda^2 / 8
    Interval t;                          // (4 / lambda)(n^2 / ell^2)
    BigInt t_ceil;
    Interval density_bound;              // 2^{-delta ell^4 / n^3}
    bool in_hypothesis_range = false;       // n^{3/4}/delta <= ell <= n/2
    mpfr_prec_t precision = 0;
};

inline constexpr mpfr_prec_t kParamsPrecision = 64;

/// Requires 0 < eps < 1, d >= 1, 1 <= ell <= n.
SoundnessParams compute_params(const Rational& eps, std::uint32_t d, std::uint32_t n,
                               std::uint32_t ell, mpfr_prec_t precision = kParamsPrecision);

/// lambda as an enclosure at an arbitrary precision.
Interval lambda_interval(const Rational& eps, std::uint32_t d, mpfr_prec_t precision);

enum class ScheduleMode { eth, gap_eth };

/// Rate function for the Gap-ETH schedule.
struct RateFunction {
    enum class Kind { inverse_log2, constant } kind = Kind::inverse_log2;
    Rational value;  // used by Kind::constant

    Interval at(std::uint64_t m, mpfr_prec_t precision) const;
};

/// ETH: floor(m / log2(m)^2). Gap-ETH: floor(m * f(m)^{1/5}). Requires m >= 16
/// and f(m) in (0, 1]. With n set the result is clamped to [1, n/2].
std::uint64_t ell_schedule(ScheduleMode mode, std::uint64_t m,
                           const std::optional<RateFunction>& rate = std::nullopt,
                           std::optional<std::uint32_t> n = std::nullopt);

// ---------------------------------------------------------------------------
// Lemma report

enum class Verdict { holds, fails, out_of_range };

std::string_view to_string(Verdict v);

struct LemmaRow {
    AssignmentPair pair;
    BigInt count;
    Interval bound;            // (2^{-lambda ell^2 / n} C(n, ell))^{2t}
    bool within_bound = false; // count <= bound, regardless of hypothesis range
    Verdict verdict = Verdict::out_of_range;
};

/// (2^{-lambda ell^2 / n} C(n, ell))^{2t} at the given precision.
Interval lemma_bound(const SoundnessParams& params, std::uint32_t t, mpfr_prec_t precision);

LemmaRow lemma_row(const AssignmentSet& a, const AssignmentSet& b, const BigInt& count,
                   const CnfFormula& phi, const SoundnessParams& params, std::uint32_t t);

/// One row per observed class, in class order.
std::vector<LemmaRow> lemma_bound_report(const KttEnumeration& e, const CnfFormula& phi,
                                         const SoundnessParams& params);

/// CSV: A-digest,B-digest,|A|,|B|,terrible,good,bad,conflicted,count,bound,verdict
std::string to_csv(const std::vector<LemmaRow>& rows);

}  // namespace dksred
