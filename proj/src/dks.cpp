#include "dksred/dks.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace dksred {

namespace {

void check_k(const ExplicitGraph& g, std::size_t k) {
    if (k < 2 || k > g.num_vertices()) {
        throw std::invalid_argument("DkS needs 2 <= k <= N (k = " + std::to_string(k) +
                                    ", N = " + std::to_string(g.num_vertices()) + ")");
    }
}

DksSolution make_solution(const ExplicitGraph& g, std::vector<Vertex> vertices, bool optimal) {
    std::sort(vertices.begin(), vertices.end());
    DksSolution s;
    s.density = density(g, vertices);
    s.vertices = std::move(vertices);
    s.optimal = optimal;
    return s;
}

std::uint64_t pairs(std::uint64_t r) { return r * (r - (r > 0 ? 1 : 0)) / 2; }

class BranchAndBound {
public:
    BranchAndBound(const ExplicitGraph& g, std::size_t k, const DksBudget& budget)
        : g_(g), k_(k), budget_(budget), in_count_(g.num_vertices(), 0),
          start_(std::chrono::steady_clock::now()) {}

    /// Highest edge count reachable, starting from an incumbent with
    /// `incumbent` edges. Returns false if the budget ran out.
    bool maximize(const std::vector<Vertex>& order, std::uint64_t incumbent,
                  const std::vector<Vertex>& incumbent_set) {
        order_ = order;
        best_edges_ = incumbent;
        best_set_ = incumbent_set;
        mode_ = Mode::maximize;
        search(0, k_);
        return !exhausted_;
    }

    /// First set in lexicographic order with exactly `target` edges.
    bool find_first(std::uint64_t target) {
        order_.resize(g_.num_vertices());
        std::iota(order_.begin(), order_.end(), Vertex{0});
        target_ = target;
        found_ = false;
        mode_ = Mode::first_hit;
        search(0, k_);
        return found_;
    }

    std::uint64_t best_edges() const { return best_edges_; }
    const std::vector<Vertex>& best_set() const { return best_set_; }
    bool exhausted() const { return exhausted_; }

private:
    enum class Mode { maximize, first_hit };

    bool out_of_budget() {
        if (exhausted_) {
            return true;
        }
        if (++nodes_ > budget_.max_nodes) {
            exhausted_ = true;
        } else if (budget_.wall_clock && (nodes_ & 0xfff) == 0 &&
                   std::chrono::steady_clock::now() - start_ > *budget_.wall_clock) {
            exhausted_ = true;
        }
        return exhausted_;
    }

    std::uint64_t upper_bound(std::size_t pos, std::size_t r) {
        scratch_.clear();
        for (std::size_t i = pos; i < order_.size(); ++i) {
            scratch_.push_back(in_count_[order_[i]]);
        }
        std::nth_element(scratch_.begin(), scratch_.begin() + static_cast<std::ptrdiff_t>(r - 1),
                         scratch_.end(), std::greater<>());
        std::uint64_t top = 0;
        for (std::size_t i = 0; i < r; ++i) {
            top += scratch_[i];
        }
        return current_edges_ + pairs(r) + top;
    }

    void search(std::size_t pos, std::size_t r) {
        if (out_of_budget() || (mode_ == Mode::first_hit && found_)) {
            return;
        }
        if (r == 0) {
            if (mode_ == Mode::maximize) {
                if (current_edges_ > best_edges_ || best_set_.empty()) {
                    best_edges_ = current_edges_;
                    best_set_ = chosen_;
                }
            } else if (current_edges_ == target_) {
                found_ = true;
                best_set_ = chosen_;
            }
            return;
        }
        if (order_.size() - pos < r) {
            return;
        }
        const std::uint64_t ub = upper_bound(pos, r);
        if (mode_ == Mode::maximize && !best_set_.empty() && ub <= best_edges_) {
            return;
        }
        if (mode_ == Mode::first_hit && ub < target_) {
            return;
        }
        const Vertex v = order_[pos];
        add(v);
        search(pos + 1, r - 1);
        remove(v);
        search(pos + 1, r);
    }

    void add(Vertex v) {
        current_edges_ += in_count_[v];
        chosen_.push_back(v);
        for (const Vertex w : g_.neighbors(v)) {
            ++in_count_[w];
        }
    }

    void remove(Vertex v) {
        for (const Vertex w : g_.neighbors(v)) {
            --in_count_[w];
        }
        chosen_.pop_back();
        current_edges_ -= in_count_[v];
    }

    const ExplicitGraph& g_;
    std::size_t k_;
    DksBudget budget_;
    std::vector<std::uint32_t> in_count_;
    std::vector<std::uint32_t> scratch_;
    std::vector<Vertex> order_;
    std::vector<Vertex> chosen_;
    std::uint64_t current_edges_ = 0;
    std::uint64_t best_edges_ = 0;
    std::vector<Vertex> best_set_;
    std::uint64_t target_ = 0;
    bool found_ = false;
    Mode mode_ = Mode::maximize;
    std::uint64_t nodes_ = 0;
    bool exhausted_ = false;
    std::chrono::steady_clock::time_point start_;
};

}  // namespace

DksSolution exact_dks(const ExplicitGraph& g, std::size_t k, const DksBudget& budget) {
    check_k(g, k);
    const std::size_t n = g.num_vertices();

    DksSolution seed = local_search_swap(g, greedy_peel(g, k), 1000);
    const std::uint64_t seed_edges = induced_edge_count(g, seed.vertices);

    std::vector<Vertex> order(n);
    std::iota(order.begin(), order.end(), Vertex{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](Vertex a, Vertex b) { return g.degree(a) > g.degree(b); });

    BranchAndBound bb(g, k, budget);
    if (!bb.maximize(order, seed_edges, seed.vertices)) {
        return make_solution(g, bb.best_set(), false);
    }
    const std::uint64_t optimum = bb.best_edges();
    BranchAndBound lex(g, k, budget);
    if (!lex.find_first(optimum)) {
        // optimal value, lexicographic pass out of budget
        return make_solution(g, bb.best_set(), true);
    }
    return make_solution(g, lex.best_set(), true);
}

DksSolution greedy_peel(const ExplicitGraph& g, std::size_t k) {
    check_k(g, k);
    const std::size_t n = g.num_vertices();
    std::vector<std::size_t> deg(n);
    std::set<std::pair<std::size_t, Vertex>> queue;
    for (Vertex v = 0; v < n; ++v) {
        deg[v] = g.degree(v);
        queue.emplace(deg[v], v);
    }
    std::vector<bool> alive(n, true);
    std::size_t remaining = n;
    while (remaining > k) {
        const auto [d, v] = *queue.begin();
        queue.erase(queue.begin());
        alive[v] = false;
        --remaining;
        for (const Vertex w : g.neighbors(v)) {
            if (alive[w]) {
                queue.erase({deg[w], w});
                --deg[w];
                queue.emplace(deg[w], w);
            }
        }
    }
    std::vector<Vertex> kept;
    for (Vertex v = 0; v < n; ++v) {
        if (alive[v]) {
            kept.push_back(v);
        }
    }
    return make_solution(g, std::move(kept), false);
}

DksSolution neighborhood_greedy(const ExplicitGraph& g, std::size_t k, double eps) {
    check_k(g, k);
    if (!(eps > 0.0 && eps <= 1.0)) {
        throw std::invalid_argument("neighborhood_greedy needs 0 < eps <= 1");
    }
    const std::size_t n = g.num_vertices();
    const auto threshold = static_cast<std::size_t>(std::floor(std::pow(static_cast<double>(n), eps)));
    std::vector<Vertex> seeds;
    for (Vertex v = 0; v < n; ++v) {
        if (g.degree(v) >= threshold) {
            seeds.push_back(v);
        }
    }
    if (seeds.empty()) {
        seeds.resize(n);
        std::iota(seeds.begin(), seeds.end(), Vertex{0});
    }

    std::vector<Vertex> best;
    std::size_t best_edges = 0;
    std::vector<std::uint32_t> into(n);
    std::vector<bool> in_set(n);
    for (const Vertex seed : seeds) {
        std::fill(into.begin(), into.end(), 0);
        std::fill(in_set.begin(), in_set.end(), false);
        std::vector<Vertex> set{seed};
        std::size_t edges = 0;
        in_set[seed] = true;
        for (const Vertex w : g.neighbors(seed)) {
            ++into[w];
        }
        while (set.size() < k) {
            Vertex pick = 0;
            bool have = false;
            for (Vertex v = 0; v < n; ++v) {
                if (in_set[v]) {
                    continue;
                }
                if (!have || into[v] > into[pick] ||
                    (into[v] == into[pick] && g.degree(v) > g.degree(pick))) {
                    pick = v;
                    have = true;
                }
            }
            edges += into[pick];
            in_set[pick] = true;
            set.push_back(pick);
            for (const Vertex w : g.neighbors(pick)) {
                ++into[w];
            }
        }
        if (best.empty() || edges > best_edges) {
            best = set;
            best_edges = edges;
        }
    }
    return make_solution(g, std::move(best), false);
}

DksSolution local_search_swap(const ExplicitGraph& g, const DksSolution& start,
                              std::size_t max_iters, LocalSearchTrace* trace) {
    const std::size_t n = g.num_vertices();
    check_k(g, start.k());
    std::vector<bool> in_set(n, false);
    for (const Vertex v : start.vertices) {
        if (v >= n || in_set[v]) {
            throw std::invalid_argument("local_search_swap: start is not a valid vertex set");
        }
        in_set[v] = true;
    }
    std::vector<std::int64_t> into(n, 0);
    for (const Vertex v : start.vertices) {
        for (const Vertex w : g.neighbors(v)) {
            ++into[w];
        }
    }
    std::vector<Vertex> set = start.vertices;
    if (trace != nullptr) {
        trace->densities.push_back(density(g, set));
    }
    for (std::size_t iter = 0; iter < max_iters; ++iter) {
        std::int64_t best_gain = 0;
        std::size_t best_out = 0;
        Vertex best_in = 0;
        for (std::size_t oi = 0; oi < set.size(); ++oi) {
            const Vertex out = set[oi];
            for (Vertex in = 0; in < n; ++in) {
                if (in_set[in]) {
                    continue;
                }
                const std::int64_t gain =
                    into[in] - (g.has_edge(in, out) ? 1 : 0) - into[out];
                if (gain > best_gain) {
                    best_gain = gain;
                    best_out = oi;
                    best_in = in;
                }
            }
        }
        if (best_gain <= 0) {
            break;
        }
        const Vertex out = set[best_out];
        in_set[out] = false;
        for (const Vertex w : g.neighbors(out)) {
            --into[w];
        }
        in_set[best_in] = true;
        for (const Vertex w : g.neighbors(best_in)) {
            ++into[w];
        }
        set[best_out] = best_in;
        if (trace != nullptr) {
            trace->densities.push_back(density(g, set));
        }
    }
    return make_solution(g, std::move(set), false);
}

std::string to_text(const DksSolution& s) {
    std::ostringstream out;
    out << "k " << s.k() << " density " << fraction_string(s.density) << " optimal "
        << (s.optimal ? 1 : 0) << '\n';
    for (std::size_t i = 0; i < s.vertices.size(); ++i) {
        out << (i == 0 ? "" : " ") << s.vertices[i];
    }
    out << '\n';
    return out.str();
}

}  // namespace dksred
