#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dksred/exact.hpp"

namespace dksred {

struct Literal {
    std::uint32_t var = 0;  // 1-based
    bool negated = false;

    bool satisfied_by(bool value) const { return value != negated; }
    friend bool operator==(const Literal&, const Literal&) = default;
    friend auto operator<=>(const Literal&, const Literal&) = default;
};

/// Literals sorted by variable; at most one literal per variable.
using Clause = std::vector<Literal>;

class FormulaError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A boolean CNF formula with clauses of width 1..3.
class CnfFormula {
public:
    /// Validates ranges and widths, rejects tautologies, canonicalizes each
    /// clause (sorted, duplicate literals merged). Throws FormulaError.
    CnfFormula(std::uint32_t num_vars, std::vector<Clause> clauses);

    std::uint32_t num_vars() const { return n_; }
    std::size_t num_clauses() const { return clauses_.size(); }
    const std::vector<Clause>& clauses() const { return clauses_; }
    const Clause& clause(std::size_t i) const { return clauses_[i]; }
    /// Max number of clauses any single variable occurs in.
    std::uint32_t max_degree() const { return degree_; }
    /// Clause indices containing each variable; entry 0 is unused.
    const std::vector<std::vector<std::uint32_t>>& occurrences() const { return occurrences_; }

    friend bool operator==(const CnfFormula& a, const CnfFormula& b) {
        return a.n_ == b.n_ && a.clauses_ == b.clauses_;
    }

private:
    std::uint32_t n_;
    std::vector<Clause> clauses_;
    std::uint32_t degree_ = 0;
    std::vector<std::vector<std::uint32_t>> occurrences_;
};

struct FullAssignment {
    std::vector<bool> bits;  // bits[i] is the value of variable i+1

    std::size_t size() const { return bits.size(); }
    bool value(std::uint32_t var) const { return bits[var - 1]; }
    friend bool operator==(const FullAssignment&, const FullAssignment&) = default;
};

enum class DimacsErrorKind {
    missing_header,
    malformed_header,
    duplicate_header,
    malformed_literal,
    literal_out_of_range,
    empty_clause,
    clause_too_wide,
    tautological_clause,
    clause_count_mismatch,
    unterminated_clause,
};

std::string_view to_string(DimacsErrorKind kind);

class DimacsError : public std::runtime_error {
public:
    DimacsError(DimacsErrorKind kind, std::size_t line, const std::string& detail);

    DimacsErrorKind kind() const { return kind_; }
    std::size_t line() const { return line_; }

private:
    DimacsErrorKind kind_;
    std::size_t line_;
};

CnfFormula parse_dimacs(std::string_view text);
CnfFormula parse_dimacs(std::istream& in);

/// Canonical DIMACS: header, one clause per line, literals in variable order.
std::string to_dimacs(const CnfFormula& phi);

/// 64-bit FNV-1a of the canonical DIMACS text.
std::uint64_t formula_hash(const CnfFormula& phi);

/// Fraction of satisfied clauses; 1 for a formula without clauses.
Rational eval_val(const CnfFormula& phi, const FullAssignment& a);

struct MaxValResult {
    Rational value;
    FullAssignment maximizer;  // lexicographically smallest, bits[0] most significant
};

inline constexpr std::uint32_t kDefaultExhaustiveLimit = 26;

/// Exhaustive maximum of eval_val over all 2^n assignments.
MaxValResult max_val(const CnfFormula& phi, std::uint32_t limit = kDefaultExhaustiveLimit);

/// Uniform random 3SAT: each clause on 3 distinct variables, uniform polarities.
CnfFormula gen_random_3sat(std::uint32_t n, std::size_t m, std::uint64_t seed);

struct PlantedInstance {
    CnfFormula formula;
    FullAssignment assignment;
};

/// Random 3SAT whose clauses all hold under a hidden random assignment.
PlantedInstance gen_planted_satisfiable(std::uint32_t n, std::size_t m, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Non-boolean 2CSPs

/// Binary constraint on variables (i, j) given by its allowed value pairs.
/// When built from an XOR equation x_i - x_j = offset (mod sigma), offset is kept
/// so the constraint can be serialized.
struct CspConstraint {
    std::uint32_t i = 0;  // 1-based
    std::uint32_t j = 0;
    std::uint32_t offset = 0;
    std::vector<bool> allowed;  // allowed[a * sigma + b] for (x_i, x_j) = (a, b)

    bool permits(std::uint32_t sigma, std::uint32_t a, std::uint32_t b) const {
        return allowed[static_cast<std::size_t>(a) * sigma + b];
    }
};

class NonBooleanCsp {
public:
    /// Constraints x_i - x_j = c (mod sigma), given as (i, j, c) triples.
    NonBooleanCsp(std::uint32_t num_vars, std::uint32_t sigma,
                  const std::vector<std::array<std::uint32_t, 3>>& xor_constraints);

    std::uint32_t num_vars() const { return n_; }
    std::uint32_t sigma() const { return sigma_; }
    const std::vector<CspConstraint>& constraints() const { return constraints_; }
    std::uint32_t max_degree() const { return degree_; }
    const std::vector<std::vector<std::uint32_t>>& occurrences() const { return occurrences_; }

    /// True if some constraint has one endpoint in each half {1..n/2}, {n/2+1..n}.
    bool crosses_halves() const;

    friend bool operator==(const NonBooleanCsp& a, const NonBooleanCsp& b);

private:
    std::uint32_t n_;
    std::uint32_t sigma_;
    std::vector<CspConstraint> constraints_;
    std::uint32_t degree_ = 0;
    std::vector<std::vector<std::uint32_t>> occurrences_;
};

/// Two independent random 2-XOR instances, one per half. Each half receives
/// degree/2 random Hamiltonian cycles (plus one random matching when degree is
/// odd) with uniformly random offsets; no constraint crosses the halves.
NonBooleanCsp gen_counterexample_csp(std::uint32_t n, std::uint32_t sigma, std::uint64_t seed,
                                     std::uint32_t degree = 2);

/// Fraction of satisfied constraints under values[i] for variable i+1.
Rational csp_eval(const NonBooleanCsp& csp, const std::vector<std::uint32_t>& values);

/// Exhaustive maximum over sigma^n assignments; throws BudgetExceeded above max_assignments.
Rational csp_max_val(const NonBooleanCsp& csp, std::uint64_t max_assignments = 20'000'000);

/// "csp <n> <sigma> <#constraints>" then "i j c" lines.
std::string to_csp_text(const NonBooleanCsp& csp);
NonBooleanCsp parse_csp_text(std::string_view text);

}  // namespace dksred
