#include "dksred/formula.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <iterator>
#include <numeric>
#include <sstream>

#include "dksred/rng.hpp"

namespace dksred {

CnfFormula::CnfFormula(std::uint32_t num_vars, std::vector<Clause> clauses)
    : n_(num_vars), clauses_(std::move(clauses)), occurrences_(num_vars + 1) {
    for (std::size_t ci = 0; ci < clauses_.size(); ++ci) {
        Clause& c = clauses_[ci];
        std::sort(c.begin(), c.end());
        c.erase(std::unique(c.begin(), c.end()), c.end());
        if (c.empty()) {
            throw FormulaError("clause " + std::to_string(ci + 1) + " is empty");
        }
        for (std::size_t k = 0; k < c.size(); ++k) {
            if (c[k].var < 1 || c[k].var > n_) {
                throw FormulaError("clause " + std::to_string(ci + 1) + ": variable " +
                                   std::to_string(c[k].var) + " out of range [1, " +
                                   std::to_string(n_) + "]");
            }
            if (k > 0 && c[k].var == c[k - 1].var) {
                throw FormulaError("clause " + std::to_string(ci + 1) + " is tautological on x" +
                                   std::to_string(c[k].var));
            }
        }
        if (c.size() > 3) {
            throw FormulaError("clause " + std::to_string(ci + 1) + " has more than 3 literals");
        }
        for (const Literal& lit : c) {
            occurrences_[lit.var].push_back(static_cast<std::uint32_t>(ci));
        }
    }
    for (const auto& occ : occurrences_) {
        degree_ = std::max<std::uint32_t>(degree_, static_cast<std::uint32_t>(occ.size()));
    }
}

std::string_view to_string(DimacsErrorKind kind) {
    switch (kind) {
        case DimacsErrorKind::missing_header: return "missing header";
        case DimacsErrorKind::malformed_header: return "malformed header";
        case DimacsErrorKind::duplicate_header: return "duplicate header";
        case DimacsErrorKind::malformed_literal: return "malformed literal";
        case DimacsErrorKind::literal_out_of_range: return "literal out of range";
        case DimacsErrorKind::empty_clause: return "empty clause";
        case DimacsErrorKind::clause_too_wide: return "clause has more than 3 literals";
        case DimacsErrorKind::tautological_clause: return "tautological clause";
        case DimacsErrorKind::clause_count_mismatch: return "clause count mismatch";
        case DimacsErrorKind::unterminated_clause: return "unterminated clause";
    }
    return "unknown";
}

DimacsError::DimacsError(DimacsErrorKind kind, std::size_t line, const std::string& detail)
    : std::runtime_error("line " + std::to_string(line) + ": " + std::string(to_string(kind)) +
                         (detail.empty() ? "" : ": " + detail)),
      kind_(kind),
      line_(line) {}

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) {
            ++i;
        }
        const std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') {
            ++i;
        }
        if (i > start) {
            out.push_back(line.substr(start, i - start));
        }
    }
    return out;
}

bool parse_int(std::string_view tok, long long& out) {
    const char* first = tok.data();
    const char* last = tok.data() + tok.size();
    if (first != last && *first == '+') {
        ++first;
    }
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last && first != last;
}

}  // namespace

CnfFormula parse_dimacs(std::string_view text) {
    bool have_header = false;
    long long n = 0;
    long long m = 0;
    std::vector<Clause> clauses;
    Clause current;
    std::size_t clause_line = 0;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    bool ended = false;

    while (pos <= text.size() && !ended) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos) {
            eol = text.size();
        }
        const std::string_view line = text.substr(pos, eol - pos);
        pos = eol + 1;
        ++line_no;

        const auto toks = split_ws(line);
        if (toks.empty() || toks[0] == "c" || toks[0].front() == 'c') {
            continue;
        }
        if (toks[0] == "%") {
            ended = true;
            break;
        }
        if (toks[0] == "p") {
            if (have_header) {
                throw DimacsError(DimacsErrorKind::duplicate_header, line_no, "");
            }
            if (toks.size() != 4 || toks[1] != "cnf" || !parse_int(toks[2], n) ||
                !parse_int(toks[3], m) || n < 0 || m < 0 || n > 0xffffffffLL) {
                throw DimacsError(DimacsErrorKind::malformed_header, line_no,
                                  "expected 'p cnf <vars> <clauses>'");
            }
            have_header = true;
            continue;
        }
        if (!have_header) {
            throw DimacsError(DimacsErrorKind::missing_header, line_no,
                              "clause data before 'p cnf' line");
        }
        for (const auto tok : toks) {
            long long lit = 0;
            if (!parse_int(tok, lit)) {
                throw DimacsError(DimacsErrorKind::malformed_literal, line_no,
                                  "'" + std::string(tok) + "'");
            }
            if (lit == 0) {
                if (current.empty()) {
                    throw DimacsError(DimacsErrorKind::empty_clause, line_no, "");
                }
                std::sort(current.begin(), current.end());
                current.erase(std::unique(current.begin(), current.end()), current.end());
                for (std::size_t k = 1; k < current.size(); ++k) {
                    if (current[k].var == current[k - 1].var) {
                        throw DimacsError(DimacsErrorKind::tautological_clause, clause_line,
                                          "x" + std::to_string(current[k].var) +
                                              " appears with both polarities");
                    }
                }
                if (current.size() > 3) {
                    throw DimacsError(DimacsErrorKind::clause_too_wide, clause_line,
                                      std::to_string(current.size()) + " literals");
                }
                clauses.push_back(std::move(current));
                current.clear();
                continue;
            }
            const long long var = lit < 0 ? -lit : lit;
            if (var > n) {
                throw DimacsError(DimacsErrorKind::literal_out_of_range, line_no,
                                  std::to_string(lit) + " with " + std::to_string(n) +
                                      " variables");
            }
            if (current.empty()) {
                clause_line = line_no;
            }
            current.push_back(Literal{static_cast<std::uint32_t>(var), lit < 0});
        }
    }
    if (!have_header) {
        throw DimacsError(DimacsErrorKind::missing_header, line_no, "no 'p cnf' line");
    }
    if (!current.empty()) {
        throw DimacsError(DimacsErrorKind::unterminated_clause, clause_line, "missing final 0");
    }
    if (static_cast<long long>(clauses.size()) != m) {
        throw DimacsError(DimacsErrorKind::clause_count_mismatch, line_no,
                          "header declares " + std::to_string(m) + ", found " +
                              std::to_string(clauses.size()));
    }
    return CnfFormula(static_cast<std::uint32_t>(n), std::move(clauses));
}

CnfFormula parse_dimacs(std::istream& in) {
    const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    return parse_dimacs(std::string_view(text));
}

std::string to_dimacs(const CnfFormula& phi) {
    std::ostringstream out;
    out << "p cnf " << phi.num_vars() << ' ' << phi.num_clauses() << '\n';
    for (const Clause& c : phi.clauses()) {
        for (const Literal& lit : c) {
            out << (lit.negated ? "-" : "") << lit.var << ' ';
        }
        out << "0\n";
    }
    return out.str();
}

std::uint64_t formula_hash(const CnfFormula& phi) { return fnv1a64(to_dimacs(phi)); }

Rational eval_val(const CnfFormula& phi, const FullAssignment& a) {
    if (a.size() != phi.num_vars()) {
        throw std::invalid_argument("assignment has " + std::to_string(a.size()) +
                                    " bits, formula has " + std::to_string(phi.num_vars()) +
                                    " variables");
    }
    if (phi.num_clauses() == 0) {
        return Rational(1);
    }
    std::size_t sat = 0;
    for (const Clause& c : phi.clauses()) {
        if (std::any_of(c.begin(), c.end(),
                        [&](const Literal& lit) { return lit.satisfied_by(a.value(lit.var)); })) {
            ++sat;
        }
    }
    Rational out(static_cast<unsigned long>(sat), static_cast<unsigned long>(phi.num_clauses()));
    out.canonicalize();
    return out;
}

MaxValResult max_val(const CnfFormula& phi, std::uint32_t limit) {
    const std::uint32_t n = phi.num_vars();
    if (n > limit || n > 62) {
        throw std::invalid_argument("max_val: " + std::to_string(n) +
                                    " variables exceeds exhaustive limit " + std::to_string(limit));
    }
    // variable i lives at bit (n - i), so counting up walks assignments in
    // lexicographic order with x1 most significant
    struct Masks {
        std::uint64_t pos = 0;
        std::uint64_t neg = 0;
    };
    std::vector<Masks> masks;
    masks.reserve(phi.num_clauses());
    for (const Clause& c : phi.clauses()) {
        Masks mk;
        for (const Literal& lit : c) {
            const std::uint64_t bit = std::uint64_t{1} << (n - lit.var);
            (lit.negated ? mk.neg : mk.pos) |= bit;
        }
        masks.push_back(mk);
    }
    const std::uint64_t total = std::uint64_t{1} << n;
    std::size_t best = 0;
    std::uint64_t best_code = 0;
    bool have = false;
    for (std::uint64_t code = 0; code < total; ++code) {
        std::size_t sat = 0;
        for (const Masks& mk : masks) {
            if (((code & mk.pos) | (~code & mk.neg)) != 0) {
                ++sat;
            }
        }
        if (!have || sat > best) {
            best = sat;
            best_code = code;
            have = true;
            if (best == masks.size()) {
                break;
            }
        }
    }
    MaxValResult out;
    out.maximizer.bits.resize(n);
    for (std::uint32_t i = 1; i <= n; ++i) {
        out.maximizer.bits[i - 1] = ((best_code >> (n - i)) & 1U) != 0;
    }
    if (phi.num_clauses() == 0) {
        out.value = 1;
    } else {
        out.value = Rational(static_cast<unsigned long>(best),
                             static_cast<unsigned long>(phi.num_clauses()));
        out.value.canonicalize();
    }
    return out;
}

namespace {

std::array<std::uint32_t, 3> sample_three_vars(Rng& rng, std::uint32_t n) {
    std::array<std::uint32_t, 3> v{};
    v[0] = static_cast<std::uint32_t>(rng.between(1, n));
    do {
        v[1] = static_cast<std::uint32_t>(rng.between(1, n));
    } while (v[1] == v[0]);
    do {
        v[2] = static_cast<std::uint32_t>(rng.between(1, n));
    } while (v[2] == v[0] || v[2] == v[1]);
    return v;
}

void require_three_vars(std::uint32_t n) {
    if (n < 3) {
        throw std::invalid_argument("3SAT generators need n >= 3, got " + std::to_string(n));
    }
}

}  // namespace

CnfFormula gen_random_3sat(std::uint32_t n, std::size_t m, std::uint64_t seed) {
    require_three_vars(n);
    Rng rng(seed);
    std::vector<Clause> clauses;
    clauses.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
        const auto vars = sample_three_vars(rng, n);
        Clause c;
        for (const auto v : vars) {
            c.push_back(Literal{v, rng.coin()});
        }
        clauses.push_back(std::move(c));
    }
    return CnfFormula(n, std::move(clauses));
}

PlantedInstance gen_planted_satisfiable(std::uint32_t n, std::size_t m, std::uint64_t seed) {
    require_three_vars(n);
    Rng rng(seed);
    FullAssignment hidden;
    hidden.bits.resize(n);
    for (std::uint32_t i = 0; i < n; ++i) {
        hidden.bits[i] = rng.coin();
    }
    std::vector<Clause> clauses;
    clauses.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
        const auto vars = sample_three_vars(rng, n);
        Clause c;
        bool sat = false;
        while (!sat) {
            c.clear();
            for (const auto v : vars) {
                const Literal lit{v, rng.coin()};
                sat = sat || lit.satisfied_by(hidden.value(v));
                c.push_back(lit);
            }
        }
        clauses.push_back(std::move(c));
    }
    return PlantedInstance{CnfFormula(n, std::move(clauses)), std::move(hidden)};
}

// ---------------------------------------------------------------------------

NonBooleanCsp::NonBooleanCsp(std::uint32_t num_vars, std::uint32_t sigma,
                             const std::vector<std::array<std::uint32_t, 3>>& xor_constraints)
    : n_(num_vars), sigma_(sigma), occurrences_(num_vars + 1) {
    if (sigma_ < 2) {
        throw FormulaError("alphabet size must be at least 2");
    }
    for (std::size_t k = 0; k < xor_constraints.size(); ++k) {
        const auto [i, j, c] = xor_constraints[k];
        if (i < 1 || i > n_ || j < 1 || j > n_ || i == j) {
            throw FormulaError("constraint " + std::to_string(k + 1) +
                               " needs two distinct variables in range");
        }
        if (c >= sigma_) {
            throw FormulaError("constraint " + std::to_string(k + 1) + " offset out of range");
        }
        CspConstraint con{i, j, c, std::vector<bool>(static_cast<std::size_t>(sigma_) * sigma_)};
        for (std::uint32_t a = 0; a < sigma_; ++a) {
            for (std::uint32_t b = 0; b < sigma_; ++b) {
                con.allowed[static_cast<std::size_t>(a) * sigma_ + b] =
                    (a + sigma_ - b) % sigma_ == c;
            }
        }
        occurrences_[i].push_back(static_cast<std::uint32_t>(constraints_.size()));
        occurrences_[j].push_back(static_cast<std::uint32_t>(constraints_.size()));
        constraints_.push_back(std::move(con));
    }
    for (const auto& occ : occurrences_) {
        degree_ = std::max<std::uint32_t>(degree_, static_cast<std::uint32_t>(occ.size()));
    }
}

bool NonBooleanCsp::crosses_halves() const {
    const std::uint32_t half = n_ / 2;
    return std::any_of(constraints_.begin(), constraints_.end(), [&](const CspConstraint& c) {
        return (c.i <= half) != (c.j <= half);
    });
}

bool operator==(const NonBooleanCsp& a, const NonBooleanCsp& b) {
    if (a.n_ != b.n_ || a.sigma_ != b.sigma_ || a.constraints_.size() != b.constraints_.size()) {
        return false;
    }
    for (std::size_t k = 0; k < a.constraints_.size(); ++k) {
        const auto& x = a.constraints_[k];
        const auto& y = b.constraints_[k];
        if (x.i != y.i || x.j != y.j || x.offset != y.offset) {
            return false;
        }
    }
    return true;
}

namespace {

void add_half_cycle(Rng& rng, std::uint32_t first, std::uint32_t size, std::uint32_t sigma,
                    std::vector<std::array<std::uint32_t, 3>>& out) {
    std::vector<std::uint32_t> order(size);
    std::iota(order.begin(), order.end(), first);
    for (std::uint32_t i = size; i > 1; --i) {
        std::swap(order[i - 1], order[rng.below(i)]);
    }
    const std::uint32_t edges = size >= 3 ? size : size - 1;
    for (std::uint32_t k = 0; k < edges; ++k) {
        const std::uint32_t c = static_cast<std::uint32_t>(rng.below(sigma));
        out.push_back({order[k], order[(k + 1) % size], c});
    }
}

void add_half_matching(Rng& rng, std::uint32_t first, std::uint32_t size, std::uint32_t sigma,
                       std::vector<std::array<std::uint32_t, 3>>& out) {
    std::vector<std::uint32_t> order(size);
    std::iota(order.begin(), order.end(), first);
    for (std::uint32_t i = size; i > 1; --i) {
        std::swap(order[i - 1], order[rng.below(i)]);
    }
    for (std::uint32_t k = 0; k + 1 < size; k += 2) {
        const std::uint32_t c = static_cast<std::uint32_t>(rng.below(sigma));
        out.push_back({order[k], order[k + 1], c});
    }
}

}  // namespace

NonBooleanCsp gen_counterexample_csp(std::uint32_t n, std::uint32_t sigma, std::uint64_t seed,
                                     std::uint32_t degree) {
    if (n < 4 || n % 2 != 0) {
        throw std::invalid_argument("counterexample CSP needs even n >= 4");
    }
    if (sigma < 3) {
        throw std::invalid_argument("counterexample CSP needs sigma >= 3");
    }
    if (degree < 1) {
        throw std::invalid_argument("counterexample CSP needs degree >= 1");
    }
    Rng rng(seed);
    const std::uint32_t half = n / 2;
    std::vector<std::array<std::uint32_t, 3>> cons;
    for (const std::uint32_t first : {1U, half + 1}) {
        for (std::uint32_t r = 0; r < degree / 2; ++r) {
            add_half_cycle(rng, first, half, sigma, cons);
        }
        if (degree % 2 == 1) {
            add_half_matching(rng, first, half, sigma, cons);
        }
    }
    return NonBooleanCsp(n, sigma, cons);
}

Rational csp_eval(const NonBooleanCsp& csp, const std::vector<std::uint32_t>& values) {
    if (values.size() != csp.num_vars()) {
        throw std::invalid_argument("csp_eval: assignment length mismatch");
    }
    if (csp.constraints().empty()) {
        return Rational(1);
    }
    std::size_t sat = 0;
    for (const auto& c : csp.constraints()) {
        if (c.permits(csp.sigma(), values[c.i - 1], values[c.j - 1])) {
            ++sat;
        }
    }
    Rational out(static_cast<unsigned long>(sat),
                 static_cast<unsigned long>(csp.constraints().size()));
    out.canonicalize();
    return out;
}

Rational csp_max_val(const NonBooleanCsp& csp, std::uint64_t max_assignments) {
    const BigInt total = pow_big(csp.sigma(), csp.num_vars());
    if (total > BigInt(static_cast<unsigned long>(max_assignments))) {
        throw BudgetExceeded("csp_max_val: sigma^n exceeds the assignment budget");
    }
    const std::uint64_t count = to_u64(total);
    std::vector<std::uint32_t> values(csp.num_vars(), 0);
    Rational best(-1);
    for (std::uint64_t code = 0; code < count; ++code) {
        const Rational v = csp_eval(csp, values);
        if (v > best) {
            best = v;
        }
        // odometer increment
        for (std::size_t k = 0; k < values.size(); ++k) {
            if (++values[k] < csp.sigma()) {
                break;
            }
            values[k] = 0;
        }
    }
    return best;
}

std::string to_csp_text(const NonBooleanCsp& csp) {
    std::ostringstream out;
    out << "csp " << csp.num_vars() << ' ' << csp.sigma() << ' ' << csp.constraints().size()
        << '\n';
    for (const auto& c : csp.constraints()) {
        out << c.i << ' ' << c.j << ' ' << c.offset << '\n';
    }
    return out.str();
}

NonBooleanCsp parse_csp_text(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string tag;
    std::uint64_t n = 0;
    std::uint64_t sigma = 0;
    std::uint64_t count = 0;
    if (!(in >> tag >> n >> sigma >> count) || tag != "csp") {
        throw FormulaError("csp text: expected header 'csp <n> <sigma> <#constraints>'");
    }
    std::vector<std::array<std::uint32_t, 3>> cons;
    for (std::uint64_t k = 0; k < count; ++k) {
        std::uint64_t i = 0;
        std::uint64_t j = 0;
        std::uint64_t c = 0;
        if (!(in >> i >> j >> c)) {
            throw FormulaError("csp text: expected " + std::to_string(count) +
                               " constraint lines, got " + std::to_string(k));
        }
        cons.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j),
                        static_cast<std::uint32_t>(c)});
    }
    std::string extra;
    if (in >> extra) {
        throw FormulaError("csp text: trailing data after constraints");
    }
    return NonBooleanCsp(static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(sigma), cons);
}

}  // namespace dksred
