#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dksred/exact.hpp"

namespace dksred {

using Vertex = std::uint32_t;
using Edge = std::pair<Vertex, Vertex>;

/// Fixed-size bitset with word-level intersection, used for neighborhoods.
class Bitset {
public:
    Bitset() = default;
    explicit Bitset(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

    std::size_t size() const { return size_; }
    void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
    void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
    bool test(std::size_t i) const { return ((words_[i >> 6] >> (i & 63)) & 1U) != 0; }
    std::size_t count() const;
    bool any() const;
    /// Number of set bits in (*this & other).
    std::size_t count_and(const Bitset& other) const;
    Bitset& operator&=(const Bitset& other);
    friend Bitset operator&(Bitset a, const Bitset& b) { return a &= b; }
    friend bool operator==(const Bitset&, const Bitset&) = default;

    template <typename F>
    void for_each(F&& f) const {
        for (std::size_t w = 0; w < words_.size(); ++w) {
            std::uint64_t bits = words_[w];
            while (bits != 0) {
                const int b = __builtin_ctzll(bits);
                f(w * 64 + static_cast<std::size_t>(b));
                bits &= bits - 1;
            }
        }
    }

private:
    std::size_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

/// Simple undirected graph on vertices 0..N-1: no loops, no multi-edges.
class ExplicitGraph {
public:
    /// Throws std::invalid_argument on a self-loop or out-of-range endpoint;
    /// repeated edges are merged.
    ExplicitGraph(std::size_t num_vertices, std::span<const Edge> edges);

    std::size_t num_vertices() const { return adj_.size(); }
    std::size_t num_edges() const { return num_edges_; }
    const std::vector<Vertex>& neighbors(Vertex v) const { return adj_[v]; }
    std::size_t degree(Vertex v) const { return adj_[v].size(); }
    bool has_edge(Vertex u, Vertex v) const;

    /// Edges as (i, j) with i < j, lexicographically sorted.
    std::vector<Edge> edges() const;

    /// One bitset row per vertex.
    std::vector<Bitset> adjacency_rows() const;

    friend bool operator==(const ExplicitGraph&, const ExplicitGraph&) = default;

private:
    std::vector<std::vector<Vertex>> adj_;
    std::size_t num_edges_ = 0;
};

/// |E(S)| / C(|S|, 2). Requires |S| >= 2 and distinct in-range vertices.
Rational density(const ExplicitGraph& g, std::span<const Vertex> subset);
/// Density of the whole graph (N >= 2).
Rational density(const ExplicitGraph& g);

/// Number of edges with both endpoints in subset.
std::size_t induced_edge_count(const ExplicitGraph& g, std::span<const Vertex> subset);

struct InducedSubgraph {
    ExplicitGraph graph;
    std::vector<Vertex> original;  // original[i] is the source vertex of new vertex i
};

/// Vertices are relabelled 0..|S|-1 in the order given. Rejects empty S.
InducedSubgraph induced_subgraph(const ExplicitGraph& g, std::span<const Vertex> subset);

inline constexpr std::uint64_t kDefaultCountBudget = 200'000'000;

/// Exact number of labelled K_{t,t} copies: pairs (L, R) of ordered t-tuples
/// (repetition allowed within a side) with every cross pair distinct and adjacent.
///
/// Sums over left supports S with |S| <= t: surj(t, |S|) * |N(S)|^t, where N(S)
/// is the common neighborhood. Throws BudgetExceeded when more than `budget`
/// supports would be visited.
BigInt count_labeled_bicliques(const ExplicitGraph& g, std::uint32_t t,
                               std::uint64_t budget = kDefaultCountBudget);

/// count >= (alpha/2)^{t^2} N^{2t}, compared exactly. Requires N >= 2.
bool alon_bound_check(const ExplicitGraph& g, std::uint32_t t);
/// Same comparison from a precomputed count.
bool alon_bound_holds(const BigInt& count, std::size_t num_vertices, std::size_t num_edges,
                      std::uint32_t t);

struct DensityCertificate {
    std::uint32_t t = 0;
    BigInt count;
    std::uint64_t num_vertices = 0;
    /// min(1, 2 (count / N^{2t})^{1/t^2}), rounded up to a dyadic rational.
    Rational bound;
    unsigned precision_bits = 0;
};

inline constexpr unsigned kCertificatePrecision = 40;

DensityCertificate density_certificate(const ExplicitGraph& g, std::uint32_t t,
                                       unsigned precision_bits = kCertificatePrecision,
                                       std::uint64_t budget = kDefaultCountBudget);
DensityCertificate certificate_from_count(const BigInt& count, std::uint64_t num_vertices,
                                          std::uint32_t t,
                                          unsigned precision_bits = kCertificatePrecision);

/// Key-value text block: t, count, N, bound_num, bound_den, precision, bound.
std::string to_text(const DensityCertificate& cert);

/// "v <N>" header then "e i j" lines with i < j in sorted order.
std::string to_edge_list(const ExplicitGraph& g);
void write_edge_list(std::ostream& out, const ExplicitGraph& g);
ExplicitGraph parse_edge_list(std::string_view text);

}  // namespace dksred
