#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dksred/exact.hpp"
#include "dksred/graph.hpp"

namespace dksred {

struct DksSolution {
    std::vector<Vertex> vertices;  // sorted
    Rational density;
    bool optimal = false;

    std::size_t k() const { return vertices.size(); }
};

struct DksBudget {
    std::uint64_t max_nodes = 100'000'000;
    std::optional<std::chrono::milliseconds> wall_clock;
};

/// Exact Densest-k-Subgraph by branch and bound.
///
/// A first pass explores vertices in descending-degree order to find the
/// optimal edge count; a second pass walks sets in lexicographic order to
/// return the lexicographically smallest optimal set. Both passes prune with
/// e(C) + C(r, 2) + (sum of the r largest edge counts from candidates into C),
/// r being the number of vertices still to pick. If the budget runs out the best
/// set found so far is returned with optimal = false.
DksSolution exact_dks(const ExplicitGraph& g, std::size_t k, const DksBudget& budget = {});

/// Repeatedly deletes a minimum-degree vertex (smallest index on ties) until k remain.
DksSolution greedy_peel(const ExplicitGraph& g, std::size_t k);

/// Seeds from every vertex of degree >= floor(N^eps) (all vertices if none
/// qualifies), grows each seed by the vertex with the most edges into the
/// current set, and keeps the densest result.
DksSolution neighborhood_greedy(const ExplicitGraph& g, std::size_t k, double eps);

struct LocalSearchTrace {
    std::vector<Rational> densities;  // density after each accepted swap, starting point first
};

/// Best-improvement 1-swap local search from a feasible start.
DksSolution local_search_swap(const ExplicitGraph& g, const DksSolution& start,
                              std::size_t max_iters, LocalSearchTrace* trace = nullptr);

/// "k <k> density <p>/<q> optimal <0|1>" followed by the sorted vertex list.
std::string to_text(const DksSolution& s);

}  // namespace dksred
