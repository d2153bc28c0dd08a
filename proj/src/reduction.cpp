#include "dksred/reduction.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace dksred {

BigInt vertex_count(std::uint32_t n, std::uint32_t ell) {
    if (ell > n) {
        throw std::invalid_argument("vertex_count: ell = " + std::to_string(ell) +
                                    " exceeds n = " + std::to_string(n));
    }
    return pow_big(2, ell) * binomial(n, ell);
}

bool consistent(const PartialVertex& u, const PartialVertex& v) {
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < u.vars.size() && j < v.vars.size()) {
        if (u.vars[i] < v.vars[j]) {
            ++i;
        } else if (u.vars[i] > v.vars[j]) {
            ++j;
        } else {
            if (u.bits[i] != v.bits[j]) {
                return false;
            }
            ++i;
            ++j;
        }
    }
    return true;
}

std::string to_string(const PartialVertex& v) {
    std::string out;
    for (std::size_t i = 0; i < v.vars.size(); ++i) {
        if (i > 0) {
            out += ',';
        }
        out += std::to_string(v.vars[i]);
    }
    out += ' ';
    for (const bool b : v.bits) {
        out += b ? '1' : '0';
    }
    return out;
}

ReductionGraph::ReductionGraph(CnfFormula phi, std::uint32_t ell)
    : phi_(std::move(phi)), ell_(ell) {
    if (ell_ < 1) {
        throw std::invalid_argument("reduction graph needs ell >= 1");
    }
    if (ell_ > phi_.num_vars()) {
        throw std::invalid_argument("reduction graph needs ell <= n");
    }
    num_vertices_ = vertex_count(phi_.num_vars(), ell_);
    clique_size_ = binomial(phi_.num_vars(), ell_);
}

PartialVertex ReductionGraph::unrank(const BigInt& index) const {
    if (sgn(index) < 0 || index >= num_vertices_) {
        throw std::out_of_range("vertex index " + index.get_str() + " outside [0, " +
                                num_vertices_.get_str() + ")");
    }
    const BigInt block = pow_big(2, ell_);
    BigInt combo = index / block;
    BigInt pattern = index % block;

    PartialVertex v;
    v.vars.resize(ell_);
    v.bits.resize(ell_);
    // colex unrank: the j-th smallest element c_j (0-based) is the largest
    // value with C(c_j, j) <= remaining rank
    std::uint32_t upper = phi_.num_vars();
    for (std::uint32_t j = ell_; j >= 1; --j) {
        std::uint32_t c = upper;
        while (c > 0 && binomial(c - 1, j) > combo) {
            --c;
        }
        // c - 1 is the largest value with C(c-1, j) <= combo
        const std::uint32_t elem = c - 1;
        combo -= binomial(elem, j);
        v.vars[j - 1] = elem + 1;
        upper = elem;
    }
    for (std::uint32_t k = 0; k < ell_; ++k) {
        const std::uint32_t shift = ell_ - 1 - k;
        v.bits[k] = mpz_tstbit(pattern.get_mpz_t(), shift) != 0;
    }
    return v;
}

PartialVertex ReductionGraph::unrank(std::uint64_t index) const {
    return unrank(BigInt(static_cast<unsigned long>(index)));
}

void ReductionGraph::check_canonical(const PartialVertex& v) const {
    if (v.vars.size() != ell_ || v.bits.size() != ell_) {
        throw std::invalid_argument("vertex must assign exactly ell = " + std::to_string(ell_) +
                                    " variables");
    }
    for (std::size_t k = 0; k < v.vars.size(); ++k) {
        if (v.vars[k] < 1 || v.vars[k] > phi_.num_vars()) {
            throw std::invalid_argument("vertex variable out of range");
        }
        if (k > 0 && v.vars[k] <= v.vars[k - 1]) {
            throw std::invalid_argument("vertex variables must be strictly increasing");
        }
    }
}

BigInt ReductionGraph::rank(const PartialVertex& v) const {
    check_canonical(v);
    BigInt combo = 0;
    for (std::uint32_t j = 1; j <= ell_; ++j) {
        combo += binomial(v.vars[j - 1] - 1, j);
    }
    BigInt pattern = 0;
    for (std::uint32_t k = 0; k < ell_; ++k) {
        pattern *= 2;
        if (v.bits[k]) {
            pattern += 1;
        }
    }
    return combo * pow_big(2, ell_) + pattern;
}

bool ReductionGraph::edge(const PartialVertex& u, const PartialVertex& v) const {
    if (u == v) {
        return false;
    }
    // merged (var, bit) list of the union; consistency checked on the way
    std::vector<std::uint32_t> vars;
    std::vector<bool> bits;
    vars.reserve(u.vars.size() + v.vars.size());
    bits.reserve(u.vars.size() + v.vars.size());
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < u.vars.size() || j < v.vars.size()) {
        if (j == v.vars.size() || (i < u.vars.size() && u.vars[i] < v.vars[j])) {
            vars.push_back(u.vars[i]);
            bits.push_back(u.bits[i]);
            ++i;
        } else if (i == u.vars.size() || v.vars[j] < u.vars[i]) {
            vars.push_back(v.vars[j]);
            bits.push_back(v.bits[j]);
            ++j;
        } else {
            if (u.bits[i] != v.bits[j]) {
                return false;
            }
            vars.push_back(u.vars[i]);
            bits.push_back(u.bits[i]);
            ++i;
            ++j;
        }
    }
    const auto& occ = phi_.occurrences();
    for (const std::uint32_t x : vars) {
        for (const std::uint32_t ci : occ[x]) {
            const Clause& c = phi_.clause(ci);
            // a covered clause contains its first variable, so visit it from there only
            if (c.front().var != x) {
                continue;
            }
            bool covered = true;
            bool satisfied = false;
            for (const Literal& lit : c) {
                const auto it = std::lower_bound(vars.begin(), vars.end(), lit.var);
                if (it == vars.end() || *it != lit.var) {
                    covered = false;
                    break;
                }
                if (lit.satisfied_by(bits[static_cast<std::size_t>(it - vars.begin())])) {
                    satisfied = true;
                }
            }
            if (covered && !satisfied) {
                return false;
            }
        }
    }
    return true;
}

std::vector<PartialVertex> ReductionGraph::clique_witness(const FullAssignment& a) const {
    if (eval_val(phi_, a) != 1) {
        throw std::invalid_argument("clique_witness: assignment does not satisfy the formula");
    }
    const std::uint64_t size = to_u64(clique_size_);
    std::vector<PartialVertex> out;
    out.reserve(size);
    std::vector<std::uint32_t> combo(ell_);
    for (std::uint32_t k = 0; k < ell_; ++k) {
        combo[k] = k + 1;
    }
    const std::uint32_t n = phi_.num_vars();
    while (true) {
        PartialVertex v;
        v.vars = combo;
        v.bits.resize(ell_);
        for (std::uint32_t k = 0; k < ell_; ++k) {
            v.bits[k] = a.value(combo[k]);
        }
        out.push_back(std::move(v));
        // next combination in lexicographic order
        std::int64_t k = static_cast<std::int64_t>(ell_) - 1;
        while (k >= 0 && combo[k] == n - ell_ + 1 + static_cast<std::uint32_t>(k)) {
            --k;
        }
        if (k < 0) {
            break;
        }
        ++combo[k];
        for (std::uint32_t r = static_cast<std::uint32_t>(k) + 1; r < ell_; ++r) {
            combo[r] = combo[r - 1] + 1;
        }
    }
    return out;
}

std::vector<PartialVertex> ReductionGraph::vertices(std::uint64_t vertex_cap) const {
    if (num_vertices_ > BigInt(static_cast<unsigned long>(vertex_cap))) {
        throw BudgetExceeded("reduction graph has " + num_vertices_.get_str() +
                             " vertices, cap is " + std::to_string(vertex_cap));
    }
    const std::uint64_t n = to_u64(num_vertices_);
    std::vector<PartialVertex> out;
    out.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) {
        out.push_back(unrank(i));
    }
    return out;
}

ExplicitGraph ReductionGraph::materialize(std::uint64_t vertex_cap) const {
    const auto verts = vertices(vertex_cap);
    std::vector<Edge> edges;
    for (Vertex i = 0; i < verts.size(); ++i) {
        for (Vertex j = i + 1; j < verts.size(); ++j) {
            if (edge(verts[i], verts[j])) {
                edges.emplace_back(i, j);
            }
        }
    }
    return ExplicitGraph(verts.size(), edges);
}

void write_vertex_legend(std::ostream& out, const ReductionGraph& g, std::uint64_t vertex_cap) {
    const auto verts = g.vertices(vertex_cap);
    for (std::size_t i = 0; i < verts.size(); ++i) {
        out << i << ' ' << to_string(verts[i]) << '\n';
    }
}

// ---------------------------------------------------------------------------

CspReductionGraph::CspReductionGraph(NonBooleanCsp csp, std::uint32_t ell)
    : csp_(std::move(csp)), ell_(ell) {
    if (ell_ < 1 || ell_ > csp_.num_vars()) {
        throw std::invalid_argument("non-boolean reduction graph needs 1 <= ell <= n");
    }
}

BigInt CspReductionGraph::num_vertices() const {
    return pow_big(csp_.sigma(), ell_) * binomial(csp_.num_vars(), ell_);
}

namespace {

/// Value assigned to var by u, or -1.
std::int64_t lookup(const CspVertex& u, std::uint32_t var) {
    const auto it = std::lower_bound(u.vars.begin(), u.vars.end(), var);
    if (it == u.vars.end() || *it != var) {
        return -1;
    }
    return u.values[static_cast<std::size_t>(it - u.vars.begin())];
}

}  // namespace

bool CspReductionGraph::edge(const CspVertex& u, const CspVertex& v) const {
    if (u == v) {
        return false;
    }
    for (std::size_t k = 0; k < u.vars.size(); ++k) {
        const auto other = lookup(v, u.vars[k]);
        if (other >= 0 && static_cast<std::uint32_t>(other) != u.values[k]) {
            return false;
        }
    }
    const auto value_of = [&](std::uint32_t var) {
        const auto a = lookup(u, var);
        return a >= 0 ? a : lookup(v, var);
    };
    for (const auto& c : csp_.constraints()) {
        const auto a = value_of(c.i);
        const auto b = value_of(c.j);
        if (a >= 0 && b >= 0 &&
            !c.permits(csp_.sigma(), static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b))) {
            return false;
        }
    }
    return true;
}

namespace {

/// All ell-subsets of [first, last] with no constraint inside, times all value
/// patterns.
std::vector<CspVertex> constraint_free_vertices(const NonBooleanCsp& csp, std::uint32_t first,
                                                std::uint32_t last, std::uint32_t ell,
                                                std::uint64_t cap) {
    std::vector<std::vector<std::uint32_t>> combos;
    std::vector<std::uint32_t> cur;
    const auto& occ = csp.occurrences();
    const auto blocked = [&](std::uint32_t x) {
        for (const auto ci : occ[x]) {
            const auto& c = csp.constraints()[ci];
            const std::uint32_t partner = c.i == x ? c.j : c.i;
            if (std::find(cur.begin(), cur.end(), partner) != cur.end()) {
                return true;
            }
        }
        return false;
    };
    const auto grow = [&](auto&& self, std::uint32_t from) -> void {
        if (cur.size() == ell) {
            combos.push_back(cur);
            return;
        }
        for (std::uint32_t x = from; x <= last; ++x) {
            if (blocked(x)) {
                continue;
            }
            cur.push_back(x);
            self(self, x + 1);
            cur.pop_back();
        }
    };
    grow(grow, first);

    const BigInt patterns = pow_big(csp.sigma(), ell);
    const BigInt total = patterns * BigInt(static_cast<unsigned long>(combos.size()));
    if (total > BigInt(static_cast<unsigned long>(cap))) {
        throw BudgetExceeded("biclique side has " + total.get_str() + " vertices, cap is " +
                             std::to_string(cap));
    }
    const std::uint64_t per = to_u64(patterns);
    std::vector<CspVertex> out;
    out.reserve(to_u64(total));
    for (const auto& vars : combos) {
        for (std::uint64_t code = 0; code < per; ++code) {
            CspVertex v{vars, std::vector<std::uint32_t>(ell)};
            std::uint64_t rest = code;
            for (std::uint32_t k = ell; k-- > 0;) {
                v.values[k] = static_cast<std::uint32_t>(rest % csp.sigma());
                rest /= csp.sigma();
            }
            out.push_back(std::move(v));
        }
    }
    return out;
}

}  // namespace

CspBicliqueWitness counterexample_biclique(const NonBooleanCsp& csp, std::uint32_t ell,
                                           std::uint64_t side_cap) {
    const std::uint32_t n = csp.num_vars();
    if (ell < 1) {
        throw std::invalid_argument("counterexample biclique needs ell >= 1");
    }
    if (n % 2 != 0 || 2 * ell > n) {
        throw std::invalid_argument("counterexample biclique needs even n and ell <= n/2");
    }
    if (csp.crosses_halves()) {
        throw std::invalid_argument("counterexample biclique needs no constraint across halves");
    }
    const std::uint32_t half = n / 2;
    CspBicliqueWitness w;
    w.degree = csp.max_degree();
    w.left = constraint_free_vertices(csp, 1, half, ell, side_cap);
    w.right = constraint_free_vertices(csp, half + 1, n, ell, side_cap);

    const std::int64_t top = static_cast<std::int64_t>(half) -
                             static_cast<std::int64_t>(w.degree + 1) * ell;
    w.certified_size = top < 0 ? BigInt(0)
                               : pow_big(csp.sigma(), ell) *
                                     binomial(static_cast<std::uint64_t>(top), ell);
    w.target_size = binomial(n, ell);
    w.size_claim_applies = static_cast<std::uint64_t>(6) * (w.degree + 2) * ell <= n;
    const BigInt left_size(static_cast<unsigned long>(w.left.size()));
    const BigInt right_size(static_cast<unsigned long>(w.right.size()));
    w.sides_meet_certified = left_size >= w.certified_size && right_size >= w.certified_size;
    w.certified_meets_target = w.certified_size >= w.target_size;
    return w;
}

bool verify_biclique(const CspReductionGraph& g, const CspBicliqueWitness& w) {
    for (const auto& u : w.left) {
        for (const auto& v : w.right) {
            if (!g.edge(u, v)) {
                return false;
            }
        }
    }
    return true;
}

}  // namespace dksred
