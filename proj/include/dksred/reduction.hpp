#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "dksred/exact.hpp"
#include "dksred/formula.hpp"
#include "dksred/graph.hpp"

namespace dksred {

/// A vertex of the reduction graph: ell distinct variables (strictly
/// increasing) and one bit for each.
struct PartialVertex {
    std::vector<std::uint32_t> vars;
    std::vector<bool> bits;

    std::size_t size() const { return vars.size(); }
    friend bool operator==(const PartialVertex&, const PartialVertex&) = default;
    friend auto operator<=>(const PartialVertex&, const PartialVertex&) = default;
};

/// 2^ell * C(n, ell). Throws if ell > n.
BigInt vertex_count(std::uint32_t n, std::uint32_t ell);

/// No variable gets 0 in one vertex and 1 in the other.
bool consistent(const PartialVertex& u, const PartialVertex& v);

/// "1,3 01" style rendering: comma-separated variables, then bits.
std::string to_string(const PartialVertex& v);

inline constexpr std::uint64_t kDefaultVertexCap = 20'000;

/// The implicit graph over all partial assignments to ell variables of phi.
///
/// Vertex numbering: index = colex-rank(vars) * 2^ell + bits, where the bits
/// are read in variable order with the first variable as the most
/// significant bit.
class ReductionGraph {
public:
    ReductionGraph(CnfFormula phi, std::uint32_t ell);

    const CnfFormula& formula() const { return phi_; }
    std::uint32_t ell() const { return ell_; }
    std::uint32_t num_vars() const { return phi_.num_vars(); }
    const BigInt& num_vertices() const { return num_vertices_; }
    /// C(n, ell), the clique size in the satisfiable case.
    const BigInt& clique_size() const { return clique_size_; }
    /// ell <= n/2; larger ell is accepted but carries no density claims.
    bool within_recommended_range() const { return 2 * ell_ <= phi_.num_vars(); }

    PartialVertex unrank(const BigInt& index) const;
    PartialVertex unrank(std::uint64_t index) const;
    BigInt rank(const PartialVertex& v) const;

    /// Throws std::invalid_argument unless v has ell strictly increasing
    /// in-range variables and ell bits.
    void check_canonical(const PartialVertex& v) const;

    /// u != v, consistent, and every clause whose variables all appear in
    /// u or v is satisfied by their combined assignment.
    bool edge(const PartialVertex& u, const PartialVertex& v) const;

    /// The C(n, ell) vertices agreeing with a. Throws if a does not satisfy phi.
    std::vector<PartialVertex> clique_witness(const FullAssignment& a) const;

    /// Explicit graph with vertex i = unrank(i). Throws BudgetExceeded when
    /// N exceeds vertex_cap.
    ExplicitGraph materialize(std::uint64_t vertex_cap = kDefaultVertexCap) const;

    /// All vertices in index order (requires N <= vertex_cap).
    std::vector<PartialVertex> vertices(std::uint64_t vertex_cap = kDefaultVertexCap) const;

private:
    CnfFormula phi_;
    std::uint32_t ell_;
    BigInt num_vertices_;
    BigInt clique_size_;
};

/// "<index> <vars> <bits>" per line, in index order.
void write_vertex_legend(std::ostream& out, const ReductionGraph& g,
                         std::uint64_t vertex_cap = kDefaultVertexCap);

// ---------------------------------------------------------------------------
// Non-boolean variant

struct CspVertex {
    std::vector<std::uint32_t> vars;    // strictly increasing, 1-based
    std::vector<std::uint32_t> values;  // in [0, sigma)

    friend bool operator==(const CspVertex&, const CspVertex&) = default;
    friend auto operator<=>(const CspVertex&, const CspVertex&) = default;
};

/// Reduction graph built from a non-boolean 2CSP: vertices assign ell
/// variables values from the alphabet; edges require consistency and every
/// constraint covered by the pair to be satisfied.
class CspReductionGraph {
public:
    CspReductionGraph(NonBooleanCsp csp, std::uint32_t ell);

    const NonBooleanCsp& csp() const { return csp_; }
    std::uint32_t ell() const { return ell_; }
    /// sigma^ell * C(n, ell).
    BigInt num_vertices() const;

    bool edge(const CspVertex& u, const CspVertex& v) const;

private:
    NonBooleanCsp csp_;
    std::uint32_t ell_;
};

struct CspBicliqueWitness {
    std::vector<CspVertex> left;   // vertices inside {1..n/2} containing no constraint
    std::vector<CspVertex> right;  // same for {n/2+1..n}
    std::uint32_t degree = 0;
    /// sigma^ell * C(n/2 - (d+1) ell, ell), zero when the top argument is negative.
    BigInt certified_size;
    /// C(n, ell).
    BigInt target_size;
    /// ell <= n / (6(d+2)): the regime where certified_size >= target_size is claimed.
    bool size_claim_applies = false;
    /// |left|, |right| >= certified_size.
    bool sides_meet_certified = false;
    /// certified_size >= target_size.
    bool certified_meets_target = false;
};

inline constexpr std::uint64_t kDefaultWitnessCap = 1'000'000;

/// Enumerates both sides of the half-separated biclique. Requires ell >= 1 and
/// 2 ell <= n; throws BudgetExceeded when a side would exceed side_cap.
CspBicliqueWitness counterexample_biclique(const NonBooleanCsp& csp, std::uint32_t ell,
                                           std::uint64_t side_cap = kDefaultWitnessCap);

/// Exhaustive check that every (u, v) in left x right is distinct and adjacent.
bool verify_biclique(const CspReductionGraph& g, const CspBicliqueWitness& w);

}  // namespace dksred
