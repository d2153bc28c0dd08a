#include "dksred/graph.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "dksred/interval.hpp"

namespace dksred {

std::size_t Bitset::count() const {
    std::size_t c = 0;
    for (const auto w : words_) {
        c += static_cast<std::size_t>(__builtin_popcountll(w));
    }
    return c;
}

bool Bitset::any() const {
    return std::any_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w != 0; });
}

std::size_t Bitset::count_and(const Bitset& other) const {
    std::size_t c = 0;
    for (std::size_t i = 0; i < words_.size(); ++i) {
        c += static_cast<std::size_t>(__builtin_popcountll(words_[i] & other.words_[i]));
    }
    return c;
}

Bitset& Bitset::operator&=(const Bitset& other) {
    for (std::size_t i = 0; i < words_.size(); ++i) {
        words_[i] &= other.words_[i];
    }
    return *this;
}

ExplicitGraph::ExplicitGraph(std::size_t num_vertices, std::span<const Edge> edges)
    : adj_(num_vertices) {
    for (const auto& [u, v] : edges) {
        if (u >= num_vertices || v >= num_vertices) {
            throw std::invalid_argument("edge (" + std::to_string(u) + ", " + std::to_string(v) +
                                        ") out of range for " + std::to_string(num_vertices) +
                                        " vertices");
        }
        if (u == v) {
            throw std::invalid_argument("self-loop on vertex " + std::to_string(u));
        }
        adj_[u].push_back(v);
        adj_[v].push_back(u);
    }
    for (auto& nbrs : adj_) {
        std::sort(nbrs.begin(), nbrs.end());
        nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
        num_edges_ += nbrs.size();
    }
    num_edges_ /= 2;
}

bool ExplicitGraph::has_edge(Vertex u, Vertex v) const {
    const auto& nbrs = adj_[u];
    return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

std::vector<Edge> ExplicitGraph::edges() const {
    std::vector<Edge> out;
    out.reserve(num_edges_);
    for (Vertex u = 0; u < adj_.size(); ++u) {
        for (const Vertex v : adj_[u]) {
            if (u < v) {
                out.emplace_back(u, v);
            }
        }
    }
    return out;
}

std::vector<Bitset> ExplicitGraph::adjacency_rows() const {
    std::vector<Bitset> rows(adj_.size(), Bitset(adj_.size()));
    for (Vertex u = 0; u < adj_.size(); ++u) {
        for (const Vertex v : adj_[u]) {
            rows[u].set(v);
        }
    }
    return rows;
}

namespace {

void check_subset(const ExplicitGraph& g, std::span<const Vertex> subset) {
    std::vector<Vertex> sorted(subset.begin(), subset.end());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw std::invalid_argument("vertex subset contains duplicates");
    }
    if (!sorted.empty() && sorted.back() >= g.num_vertices()) {
        throw std::invalid_argument("vertex subset out of range");
    }
}

}  // namespace

std::size_t induced_edge_count(const ExplicitGraph& g, std::span<const Vertex> subset) {
    std::vector<bool> in(g.num_vertices(), false);
    for (const Vertex v : subset) {
        in[v] = true;
    }
    std::size_t twice = 0;
    for (const Vertex v : subset) {
        for (const Vertex w : g.neighbors(v)) {
            if (in[w]) {
                ++twice;
            }
        }
    }
    return twice / 2;
}

Rational density(const ExplicitGraph& g, std::span<const Vertex> subset) {
    if (subset.size() < 2) {
        throw std::invalid_argument("density needs at least 2 vertices");
    }
    check_subset(g, subset);
    const std::size_t k = subset.size();
    Rational out(static_cast<unsigned long>(induced_edge_count(g, subset)),
                 static_cast<unsigned long>(k * (k - 1) / 2));
    out.canonicalize();
    return out;
}

Rational density(const ExplicitGraph& g) {
    const std::size_t n = g.num_vertices();
    if (n < 2) {
        throw std::invalid_argument("density needs at least 2 vertices");
    }
    Rational out(static_cast<unsigned long>(g.num_edges()),
                 static_cast<unsigned long>(n * (n - 1) / 2));
    out.canonicalize();
    return out;
}

InducedSubgraph induced_subgraph(const ExplicitGraph& g, std::span<const Vertex> subset) {
    if (subset.empty()) {
        throw std::invalid_argument("induced subgraph of an empty vertex set");
    }
    check_subset(g, subset);
    std::vector<std::int64_t> relabel(g.num_vertices(), -1);
    for (std::size_t i = 0; i < subset.size(); ++i) {
        relabel[subset[i]] = static_cast<std::int64_t>(i);
    }
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < subset.size(); ++i) {
        for (const Vertex w : g.neighbors(subset[i])) {
            const auto j = relabel[w];
            if (j > static_cast<std::int64_t>(i)) {
                edges.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>(j));
            }
        }
    }
    return InducedSubgraph{ExplicitGraph(subset.size(), edges),
                           std::vector<Vertex>(subset.begin(), subset.end())};
}

namespace {

struct BicliqueCounter {
    const std::vector<Bitset>& rows;
    std::uint32_t t;
    std::uint64_t budget;
    std::vector<BigInt> surj;       // surj[s] for s <= t
    std::vector<BigInt> pow_cache;  // pow_cache[c] = c^t, filled lazily
    std::vector<bool> pow_ready;
    std::uint64_t visited = 0;
    BigInt total = 0;

    const BigInt& power(std::size_t c) {
        if (!pow_ready[c]) {
            pow_cache[c] = pow_big(BigInt(static_cast<unsigned long>(c)), t);
            pow_ready[c] = true;
        }
        return pow_cache[c];
    }

    void extend(const Bitset& common, Vertex next, std::uint32_t depth) {
        const std::size_t n = rows.size();
        for (Vertex s = next; s < n; ++s) {
            const std::size_t c = common.count_and(rows[s]);
            if (c == 0) {
                continue;
            }
            if (++visited > budget) {
                throw BudgetExceeded("labelled biclique count exceeded its support budget");
            }
            total += surj[depth + 1] * power(c);
            if (depth + 1 < t) {
                extend(common & rows[s], s + 1, depth + 1);
            }
        }
    }
};

}  // namespace

BigInt count_labeled_bicliques(const ExplicitGraph& g, std::uint32_t t, std::uint64_t budget) {
    if (t < 1) {
        throw std::invalid_argument("biclique side size t must be >= 1");
    }
    const std::size_t n = g.num_vertices();
    const auto rows = g.adjacency_rows();
    BicliqueCounter counter{rows, t, budget, {}, std::vector<BigInt>(n + 1),
                            std::vector<bool>(n + 1, false)};
    counter.surj.resize(t + 1);
    for (std::uint32_t s = 0; s <= t; ++s) {
        counter.surj[s] = surjections(t, s);
    }
    Bitset all(n);
    for (std::size_t v = 0; v < n; ++v) {
        all.set(v);
    }
    counter.extend(all, 0, 0);
    return counter.total;
}

bool alon_bound_holds(const BigInt& count, std::size_t num_vertices, std::size_t num_edges,
                      std::uint32_t t) {
    if (num_vertices < 2) {
        throw std::invalid_argument("Alon bound needs N >= 2");
    }
    // alpha = 2|E| / (N(N-1)); compare count * (2N(N-1))^{t^2} >= (2|E|)^{t^2} N^{2t}
    const std::uint64_t t2 = static_cast<std::uint64_t>(t) * t;
    const BigInt nn(static_cast<unsigned long>(num_vertices));
    const BigInt lhs = count * pow_big(2 * nn * (nn - 1), t2);
    const BigInt rhs = pow_big(BigInt(static_cast<unsigned long>(2 * num_edges)), t2) *
                       pow_big(nn, 2 * static_cast<std::uint64_t>(t));
    return lhs >= rhs;
}

bool alon_bound_check(const ExplicitGraph& g, std::uint32_t t) {
    return alon_bound_holds(count_labeled_bicliques(g, t), g.num_vertices(), g.num_edges(), t);
}

DensityCertificate certificate_from_count(const BigInt& count, std::uint64_t num_vertices,
                                          std::uint32_t t, unsigned precision_bits) {
    if (num_vertices < 2) {
        throw std::invalid_argument("density certificate needs N >= 2");
    }
    if (t < 1) {
        throw std::invalid_argument("biclique side size t must be >= 1");
    }
    DensityCertificate cert;
    cert.t = t;
    cert.count = count;
    cert.num_vertices = num_vertices;
    cert.precision_bits = precision_bits;
    Rational ratio(count, pow_big(BigInt(static_cast<unsigned long>(num_vertices)),
                                  2 * static_cast<std::uint64_t>(t)));
    ratio.canonicalize();
    const Interval root = Interval(ratio, precision_bits).root(static_cast<unsigned long>(t) * t);
    const Interval doubled = Interval(Rational(2), precision_bits) * root;
    Rational upper = doubled.upper_rational();
    cert.bound = upper > 1 ? Rational(1) : upper;
    return cert;
}

DensityCertificate density_certificate(const ExplicitGraph& g, std::uint32_t t,
                                       unsigned precision_bits, std::uint64_t budget) {
    return certificate_from_count(count_labeled_bicliques(g, t, budget), g.num_vertices(), t,
                                  precision_bits);
}

std::string to_text(const DensityCertificate& cert) {
    std::ostringstream out;
    out << "t " << cert.t << '\n'
        << "count " << cert.count.get_str() << '\n'
        << "N " << cert.num_vertices << '\n'
        << "bound_num " << cert.bound.get_num().get_str() << '\n'
        << "bound_den " << cert.bound.get_den().get_str() << '\n'
        << "precision " << cert.precision_bits << '\n';
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", to_double(cert.bound));
    out << "bound " << buf << '\n';
    return out.str();
}

void write_edge_list(std::ostream& out, const ExplicitGraph& g) {
    out << "v " << g.num_vertices() << '\n';
    for (const auto& [u, v] : g.edges()) {
        out << "e " << u << ' ' << v << '\n';
    }
}

std::string to_edge_list(const ExplicitGraph& g) {
    std::ostringstream out;
    write_edge_list(out, g);
    return out.str();
}

ExplicitGraph parse_edge_list(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;
    std::size_t n = 0;
    std::vector<Edge> edges;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag) || tag[0] == '#') {
            continue;
        }
        if (tag == "v") {
            if (have_header || !(ls >> n)) {
                throw std::invalid_argument("edge list line " + std::to_string(line_no) +
                                            ": bad 'v <N>' header");
            }
            have_header = true;
        } else if (tag == "e") {
            std::uint64_t u = 0;
            std::uint64_t v = 0;
            if (!have_header || !(ls >> u >> v)) {
                throw std::invalid_argument("edge list line " + std::to_string(line_no) +
                                            ": bad edge");
            }
            edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
        } else {
            throw std::invalid_argument("edge list line " + std::to_string(line_no) +
                                        ": unknown record '" + tag + "'");
        }
    }
    if (!have_header) {
        throw std::invalid_argument("edge list: missing 'v <N>' header");
    }
    return ExplicitGraph(n, edges);
}

}  // namespace dksred
