#include "dksred/soundness.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

#include "dksred/rng.hpp"

namespace dksred {

void AssignmentSet::insert(std::uint32_t var, bool bit) {
    const std::size_t pos = 2 * static_cast<std::size_t>(var - 1) + (bit ? 1 : 0);
    words_[pos >> 6] |= std::uint64_t{1} << (pos & 63);
}

bool AssignmentSet::contains(std::uint32_t var, bool bit) const {
    const std::size_t pos = 2 * static_cast<std::size_t>(var - 1) + (bit ? 1 : 0);
    return ((words_[pos >> 6] >> (pos & 63)) & 1U) != 0;
}

std::size_t AssignmentSet::size() const {
    std::size_t c = 0;
    for (const auto w : words_) {
        c += static_cast<std::size_t>(__builtin_popcountll(w));
    }
    return c;
}

void AssignmentSet::merge(const PartialVertex& v) {
    for (std::size_t k = 0; k < v.vars.size(); ++k) {
        insert(v.vars[k], v.bits[k]);
    }
}

bool AssignmentSet::contains_all(const PartialVertex& v) const {
    for (std::size_t k = 0; k < v.vars.size(); ++k) {
        if (!contains(v.vars[k], v.bits[k])) {
            return false;
        }
    }
    return true;
}

std::string AssignmentSet::to_string() const {
    std::string out;
    for (std::uint32_t x = 1; x <= n_; ++x) {
        for (const bool b : {false, true}) {
            if (contains(x, b)) {
                if (!out.empty()) {
                    out += ' ';
                }
                out += 'x' + std::to_string(x) + '=' + (b ? '1' : '0');
            }
        }
    }
    return out;
}

std::string AssignmentSet::digest() const {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(fnv1a64(to_string())));
    return buf;
}

AssignmentSet flatten(std::span<const PartialVertex> tuple, std::uint32_t num_vars) {
    AssignmentSet out(num_vars);
    for (const auto& v : tuple) {
        out.merge(v);
    }
    return out;
}

std::string_view to_string(VarClass c) {
    switch (c) {
        case VarClass::terrible: return "terrible";
        case VarClass::good: return "good";
        case VarClass::bad: return "bad";
        case VarClass::conflicted: return "conflicted";
    }
    return "unknown";
}

AssignmentPair classify(const AssignmentSet& a, const AssignmentSet& b, const CnfFormula& phi) {
    const std::uint32_t n = phi.num_vars();
    if (a.num_vars() != n || b.num_vars() != n) {
        throw std::invalid_argument("classify: assignment sets sized for a different formula");
    }
    AssignmentPair out;
    out.a = a;
    out.b = b;
    out.tags.resize(n);
    for (std::uint32_t x = 1; x <= n; ++x) {
        const bool a0 = a.contains(x, false);
        const bool a1 = a.contains(x, true);
        const bool b0 = b.contains(x, false);
        const bool b1 = b.contains(x, true);
        VarClass tag;
        if ((a0 && b1) || (a1 && b0)) {
            tag = VarClass::conflicted;
            out.conflicted = true;
        } else if (int{a0} + int{a1} + int{b0} + int{b1} <= 1) {
            tag = VarClass::terrible;
            out.terrible.push_back(x);
        } else if ((a0 && b0) || (a1 && b1)) {
            tag = VarClass::good;
            out.good.push_back(x);
        } else {
            // two appearances, no conflict, not shared: both bits on one side
            tag = VarClass::bad;
            out.bad.push_back(x);
        }
        out.tags[x - 1] = tag;
    }
    for (std::uint32_t ci = 0; ci < phi.num_clauses(); ++ci) {
        const Clause& c = phi.clause(ci);
        const bool all_good = std::all_of(c.begin(), c.end(), [&](const Literal& lit) {
            return out.tags[lit.var - 1] == VarClass::good;
        });
        if (!all_good) {
            continue;
        }
        out.good_clauses.push_back(ci);
        const bool sat = std::any_of(c.begin(), c.end(), [&](const Literal& lit) {
            return lit.satisfied_by(a.contains(lit.var, true));
        });
        if (!sat) {
            out.unsat_clauses.push_back(ci);
        }
    }
    return out;
}

namespace {

struct ClassAccumulator {
    std::uint64_t count = 0;
    Bitset left;
    Bitset right;
};

class KttEnumerator {
public:
    KttEnumerator(const std::vector<PartialVertex>& verts, const std::vector<Bitset>& rows,
                  std::uint32_t t, std::uint32_t num_vars, std::uint64_t budget)
        : verts_(verts), rows_(rows), t_(t), n_(num_vars), budget_(budget) {}

    void run() {
        Bitset all(rows_.size());
        for (std::size_t v = 0; v < rows_.size(); ++v) {
            all.set(v);
        }
        left_step(0, all, AssignmentSet(n_));
    }

    std::map<std::pair<AssignmentSet, AssignmentSet>, ClassAccumulator>& classes() {
        return classes_;
    }
    std::uint64_t total() const { return total_; }

private:
    void left_step(std::uint32_t depth, const Bitset& common, const AssignmentSet& a) {
        if (depth == t_) {
            right_step(0, common, a, AssignmentSet(n_));
            return;
        }
        for (Vertex v = 0; v < rows_.size(); ++v) {
            Bitset next = common & rows_[v];
            if (!next.any()) {
                continue;
            }
            AssignmentSet grown = a;
            grown.merge(verts_[v]);
            left_.push_back(v);
            left_step(depth + 1, next, grown);
            left_.pop_back();
        }
    }

    void right_step(std::uint32_t depth, const Bitset& candidates, const AssignmentSet& a,
                    const AssignmentSet& b) {
        if (depth == t_) {
            record(a, b);
            return;
        }
        candidates.for_each([&](std::size_t w) {
            AssignmentSet grown = b;
            grown.merge(verts_[w]);
            right_.push_back(static_cast<Vertex>(w));
            right_step(depth + 1, candidates, a, grown);
            right_.pop_back();
        });
    }

    void record(const AssignmentSet& a, const AssignmentSet& b) {
        if (++total_ > budget_) {
            throw BudgetExceeded("biclique enumeration exceeded " + std::to_string(budget_) +
                                 " copies");
        }
        auto [it, inserted] = classes_.try_emplace({a, b});
        ClassAccumulator& acc = it->second;
        if (inserted) {
            acc.left = Bitset(rows_.size());
            acc.right = Bitset(rows_.size());
        }
        ++acc.count;
        for (const Vertex v : left_) {
            acc.left.set(v);
        }
        for (const Vertex w : right_) {
            acc.right.set(w);
        }
    }

    const std::vector<PartialVertex>& verts_;
    const std::vector<Bitset>& rows_;
    std::uint32_t t_;
    std::uint32_t n_;
    std::uint64_t budget_;
    std::vector<Vertex> left_;
    std::vector<Vertex> right_;
    std::uint64_t total_ = 0;
    std::map<std::pair<AssignmentSet, AssignmentSet>, ClassAccumulator> classes_;
};

std::vector<Vertex> members(const Bitset& bits) {
    std::vector<Vertex> out;
    bits.for_each([&](std::size_t v) { out.push_back(static_cast<Vertex>(v)); });
    return out;
}

}  // namespace

KttEnumeration enumerate_ktt_classes(const ReductionGraph& rg, const ExplicitGraph& g,
                                     std::uint32_t t, std::uint64_t budget) {
    if (t < 1) {
        throw std::invalid_argument("biclique side size t must be >= 1");
    }
    if (BigInt(static_cast<unsigned long>(g.num_vertices())) != rg.num_vertices()) {
        throw std::invalid_argument("explicit graph does not match the reduction graph");
    }
    const auto verts = rg.vertices(g.num_vertices());
    const auto rows = g.adjacency_rows();
    KttEnumerator en(verts, rows, t, rg.num_vars(), budget);
    en.run();

    KttEnumeration out;
    out.t = t;
    out.total = BigInt(static_cast<unsigned long>(en.total()));
    for (auto& [key, acc] : en.classes()) {
        out.classes.push_back(KttClass{key.first, key.second,
                                       BigInt(static_cast<unsigned long>(acc.count)),
                                       members(acc.left), members(acc.right)});
    }
    return out;
}

BigInt ktt_count(const KttEnumeration& e, const AssignmentSet& a, const AssignmentSet& b) {
    const auto it = std::lower_bound(
        e.classes.begin(), e.classes.end(), std::make_pair(a, b),
        [](const KttClass& c, const auto& key) {
            return std::tie(c.a, c.b) < std::tie(key.first, key.second);
        });
    if (it != e.classes.end() && it->a == a && it->b == b) {
        return it->count;
    }
    return 0;
}

PartitionCheck partition_check(const KttEnumeration& e, const ExplicitGraph& g) {
    PartitionCheck out;
    out.class_sum = 0;
    for (const auto& c : e.classes) {
        out.class_sum += c.count;
    }
    out.direct_count = count_labeled_bicliques(g, e.t);
    out.holds = out.class_sum == out.direct_count;
    return out;
}

ContainmentCheck containment_check(const KttEnumeration& e, const ReductionGraph& rg) {
    ContainmentCheck out;
    const std::uint32_t ell = rg.ell();
    for (const auto& c : e.classes) {
        ++out.classes_checked;
        for (const Vertex v : c.left_vertices) {
            const auto u = rg.unrank(static_cast<std::uint64_t>(v));
            if (u.size() != ell || !c.a.contains_all(u)) {
                ++out.vertex_violations;
            }
        }
        for (const Vertex v : c.right_vertices) {
            const auto u = rg.unrank(static_cast<std::uint64_t>(v));
            if (u.size() != ell || !c.b.contains_all(u)) {
                ++out.vertex_violations;
            }
        }
        const BigInt cap = pow_big(binomial(c.a.size(), ell), e.t) *
                           pow_big(binomial(c.b.size(), ell), e.t);
        if (c.count > cap) {
            ++out.count_violations;
        }
        const auto pair = classify(c.a, c.b, rg.formula());
        if (pair.conflicted && c.count > 0) {
            ++out.conflicted_nonempty;
        }
    }
    return out;
}

ProhibitedPairCheck prohibited_pair_check(const KttEnumeration& e, const ReductionGraph& rg) {
    ProhibitedPairCheck out;
    const CnfFormula& phi = rg.formula();
    for (const auto& c : e.classes) {
        const auto pair = classify(c.a, c.b, phi);
        if (pair.conflicted) {
            continue;
        }
        ++out.classes_checked;
        const bool all_good = pair.good.size() == phi.num_vars();
        if (all_good) {
            ++out.all_good_classes;
        }
        if (pair.unsat_clauses.empty()) {
            continue;
        }
        ++out.classes_with_unsat;
        const auto offending = [&](const PartialVertex& u) {
            for (const auto ci : pair.unsat_clauses) {
                const Clause& clause = phi.clause(ci);
                std::size_t inside = 0;
                for (const Literal& lit : clause) {
                    if (std::binary_search(u.vars.begin(), u.vars.end(), lit.var)) {
                        ++inside;
                    }
                }
                if (inside >= 2) {
                    return true;
                }
            }
            return false;
        };
        for (const auto* side : {&c.left_vertices, &c.right_vertices}) {
            for (const Vertex v : *side) {
                if (offending(rg.unrank(static_cast<std::uint64_t>(v)))) {
                    ++out.violations;
                    if (all_good) {
                        ++out.all_good_violations;
                    }
                }
            }
        }
    }
    return out;
}

bool binomial_product_check(std::uint32_t size_a, std::uint32_t size_b, std::uint32_t ell,
                            std::uint32_t n) {
    if (static_cast<std::uint64_t>(size_a) + size_b > 2 * static_cast<std::uint64_t>(n)) {
        throw std::invalid_argument("binomial_product_check needs |A| + |B| <= 2n");
    }
    if (ell > n) {
        throw std::invalid_argument("binomial_product_check needs ell <= n");
    }
    const BigInt cn = binomial(n, ell);
    return binomial(size_a, ell) * binomial(size_b, ell) <= cn * cn;
}

BinomialScan binomial_product_scan(std::uint32_t max_n) {
    BinomialScan scan;
    for (std::uint32_t n = 0; n <= max_n; ++n) {
        for (std::uint32_t ell = 0; ell <= n; ++ell) {
            for (std::uint32_t a = 0; a <= 2 * n; ++a) {
                for (std::uint32_t b = 0; a + b <= 2 * n; ++b) {
                    ++scan.configurations;
                    if (!binomial_product_check(a, b, ell, n)) {
                        ++scan.falsifications;
                    }
                }
            }
        }
    }
    return scan;
}

// ---------------------------------------------------------------------------

std::string_view to_string(LambdaBranch b) {
    switch (b) {
        case LambdaBranch::log_term: return "-log2(1-beta/2)";
        case LambdaBranch::beta_over_64: return "beta/64";
        case LambdaBranch::eps_over_384d: return "eps/(384d)";
    }
    return "unknown";
}

namespace {

Rational beta_of(const Rational& eps, std::uint32_t d) {
    Rational beta = eps / Rational(100 * static_cast<unsigned long>(d));
    beta.canonicalize();
    return beta;
}

Interval log_branch_interval(const Rational& beta, mpfr_prec_t p) {
    const Rational inner = Rational(1) - beta / 2;
    return -Interval(inner, p).log2();
}

void check_params_input(const Rational& eps, std::uint32_t d) {
    if (eps <= 0 || eps >= 1) {
        throw std::invalid_argument("soundness parameters need 0 < eps < 1");
    }
    if (d < 1) {
        throw std::invalid_argument("soundness parameters need d >= 1");
    }
}

}  // namespace

Interval lambda_interval(const Rational& eps, std::uint32_t d, mpfr_prec_t precision) {
    check_params_input(eps, d);
    const Rational beta = beta_of(eps, d);
    const Rational beta_branch = beta / 64;
    const Rational eps_branch = eps / Rational(384 * static_cast<unsigned long>(d));
    const Interval rational_min(beta_branch < eps_branch ? beta_branch : eps_branch, precision);
    return min(log_branch_interval(beta, precision), rational_min);
}

SoundnessParams compute_params(const Rational& eps, std::uint32_t d, std::uint32_t n,
                               std::uint32_t ell, mpfr_prec_t precision) {
    check_params_input(eps, d);
    if (ell < 1 || ell > n) {
        throw std::invalid_argument("soundness parameters need 1 <= ell <= n");
    }
    SoundnessParams p;
    p.eps = eps;
    p.d = d;
    p.n = n;
    p.ell = ell;
    p.precision = precision;
    p.beta = beta_of(eps, d);
    p.beta_branch = p.beta / 64;
    p.beta_branch.canonicalize();
    p.eps_branch = eps / Rational(384 * static_cast<unsigned long>(d));
    p.eps_branch.canonicalize();
    p.log_branch = log_branch_interval(p.beta, precision);

    const Rational rational_min = p.beta_branch <= p.eps_branch ? p.beta_branch : p.eps_branch;
    const LambdaBranch rational_branch =
        p.beta_branch <= p.eps_branch ? LambdaBranch::beta_over_64 : LambdaBranch::eps_over_384d;
    const auto rational_below_log = decide_lt(rational_min, [&](mpfr_prec_t prec) {
        return log_branch_interval(p.beta, prec);
    });
    if (rational_below_log.value_or(true)) {
        p.branch = rational_branch;
        p.lambda_exact = rational_min;
        p.lambda = Interval(rational_min, precision);
    } else {
        p.branch = LambdaBranch::log_term;
        p.lambda = p.log_branch;
    }

    const Interval eight(Rational(8), precision);
    p.delta = p.lambda * p.lambda / eight;
    const Rational ratio(BigInt(static_cast<unsigned long>(n)) * n,
                         BigInt(static_cast<unsigned long>(ell)) * ell);
    p.t = Interval(Rational(4), precision) / p.lambda * Interval(ratio, precision);
    if (p.lambda_exact) {
        Rational exact_t = Rational(4) / *p.lambda_exact * ratio;
        exact_t.canonicalize();
        BigInt c;
        mpz_cdiv_q(c.get_mpz_t(), exact_t.get_num_mpz_t(), exact_t.get_den_mpz_t());
        p.t_ceil = c;
    } else {
        const auto ceil_t = decide_floor([&](mpfr_prec_t prec) {
            return Interval(Rational(4), prec) / lambda_interval(eps, d, prec) *
                   Interval(ratio, prec);
        });
        if (!ceil_t) {
            throw std::runtime_error("compute_params: ceil(t) undecided");
        }
        p.t_ceil = *ceil_t + 1;
    }
    const Rational ell4_over_n3(pow_big(ell, 4), pow_big(n, 3));
    p.density_bound = (-(p.delta * Interval(ell4_over_n3, precision))).exp2();

    // ell >= n^{3/4} / delta  <=>  (ell * delta)^4 >= n^3
    const Rational n3(pow_big(n, 3));
    const auto lower_ok = decide_le(n3, [&](mpfr_prec_t prec) {
        const Interval lam = lambda_interval(eps, d, prec);
        const Interval del = lam * lam / Interval(Rational(8), prec);
        return (Interval(Rational(ell), prec) * del).pow(4);
    });
    p.in_hypothesis_range = lower_ok.value_or(false) && 2 * static_cast<std::uint64_t>(ell) <= n;
    return p;
}

Interval RateFunction::at(std::uint64_t m, mpfr_prec_t precision) const {
    if (kind == Kind::constant) {
        return Interval(value, precision);
    }
    const Interval one(Rational(1), precision);
    return one / Interval(Rational(BigInt(static_cast<unsigned long>(m))), precision).log2();
}

std::uint64_t ell_schedule(ScheduleMode mode, std::uint64_t m,
                           const std::optional<RateFunction>& rate, std::optional<std::uint32_t> n) {
    if (m < 16) {
        throw std::invalid_argument("ell schedule needs m >= 16");
    }
    const Rational mq(BigInt(static_cast<unsigned long>(m)));
    std::optional<BigInt> floor_value;
    if (mode == ScheduleMode::eth) {
        floor_value = decide_floor([&](mpfr_prec_t p) {
            const Interval lg = Interval(mq, p).log2();
            return Interval(mq, p) / (lg * lg);
        });
    } else {
        if (!rate) {
            throw std::invalid_argument("gap-eth schedule needs a rate function");
        }
        const Interval f = rate->at(m, kParamsPrecision);
        if (!f.certainly_gt(Rational(0)) || !f.certainly_le(Rational(1))) {
            throw std::invalid_argument("gap-eth rate function must take values in (0, 1]");
        }
        floor_value = decide_floor([&](mpfr_prec_t p) {
            return Interval(mq, p) * rate->at(m, p).root(5);
        });
    }
    if (!floor_value) {
        throw std::runtime_error("ell schedule: floor undecided at maximum precision");
    }
    std::uint64_t ell = to_u64(*floor_value < 0 ? BigInt(0) : *floor_value);
    if (n) {
        ell = std::clamp<std::uint64_t>(ell, 1, std::max<std::uint64_t>(1, *n / 2));
    }
    return ell;
}

// ---------------------------------------------------------------------------

std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::holds: return "holds";
        case Verdict::fails: return "fails";
        case Verdict::out_of_range: return "out-of-range";
    }
    return "unknown";
}

Interval lemma_bound(const SoundnessParams& params, std::uint32_t t, mpfr_prec_t precision) {
    const Interval lam = lambda_interval(params.eps, params.d, precision);
    const Rational ell2_over_n(BigInt(static_cast<unsigned long>(params.ell)) * params.ell,
                               BigInt(static_cast<unsigned long>(params.n)));
    const Interval factor = (-(lam * Interval(ell2_over_n, precision))).exp2();
    const Interval base = factor * Interval(Rational(binomial(params.n, params.ell)), precision);
    return base.pow(2 * static_cast<unsigned long>(t));
}

LemmaRow lemma_row(const AssignmentSet& a, const AssignmentSet& b, const BigInt& count,
                   const CnfFormula& phi, const SoundnessParams& params, std::uint32_t t) {
    LemmaRow row;
    row.pair = classify(a, b, phi);
    row.count = count;
    row.bound = lemma_bound(params, t, params.precision);
    const Rational cq(count);
    row.within_bound =
        decide_le(cq, [&](mpfr_prec_t p) { return lemma_bound(params, t, p); }).value_or(false);
    if (row.pair.conflicted && count == 0) {
        // the empty-class observation needs no hypothesis
        row.verdict = Verdict::holds;
    } else if (!params.in_hypothesis_range) {
        row.verdict = Verdict::out_of_range;
    } else {
        row.verdict = row.within_bound ? Verdict::holds : Verdict::fails;
    }
    return row;
}

std::vector<LemmaRow> lemma_bound_report(const KttEnumeration& e, const CnfFormula& phi,
                                         const SoundnessParams& params) {
    std::vector<LemmaRow> rows;
    rows.reserve(e.classes.size());
    for (const auto& c : e.classes) {
        rows.push_back(lemma_row(c.a, c.b, c.count, phi, params, e.t));
    }
    return rows;
}

std::string to_csv(const std::vector<LemmaRow>& rows) {
    std::ostringstream out;
    out << "A-digest,B-digest,|A|,|B|,terrible,good,bad,conflicted,count,bound,verdict\n";
    char bound[64];
    for (const auto& row : rows) {
        mpfr_snprintf(bound, sizeof(bound), "%.10RUe", row.bound.hi());
        out << row.pair.a.digest() << ',' << row.pair.b.digest() << ',' << row.pair.a.size()
            << ',' << row.pair.b.size() << ',' << row.pair.terrible.size() << ','
            << row.pair.good.size() << ',' << row.pair.bad.size() << ','
            << (row.pair.conflicted ? 1 : 0) << ',' << row.count.get_str() << ',' << bound << ','
            << to_string(row.verdict) << '\n';
    }
    return out.str();
}

}  // namespace dksred
