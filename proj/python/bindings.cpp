#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "dksred/birthday.hpp"
#include "dksred/cli.hpp"
#include "dksred/dks.hpp"
#include "dksred/soundness.hpp"

namespace py = pybind11;
using namespace dksred;

namespace {

// rationals and big integers cross as "p/q" and decimal strings
py::object fraction(const Rational& q) {
    static py::object cls = py::module_::import("fractions").attr("Fraction");
    return cls(fraction_string(q));
}

py::object pyint(const BigInt& z) { return py::int_(py::str(to_string(z))); }

ExplicitGraph graph_from(std::size_t n, const std::vector<std::pair<Vertex, Vertex>>& edges) {
    std::vector<Edge> e(edges.begin(), edges.end());
    return ExplicitGraph(n, e);
}

py::dict solution(const DksSolution& s) {
    py::dict d;
    d["vertices"] = s.vertices;
    d["density"] = fraction(s.density);
    d["optimal"] = s.optimal;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "3SAT to densest k-subgraph reduction toolkit";

    py::register_exception<BudgetExceeded>(m, "BudgetExceeded");
    py::register_exception<DimacsError>(m, "DimacsError", PyExc_ValueError);

    m.def("random_3sat", [](std::uint32_t n, std::size_t m_, std::uint64_t seed) {
        return to_dimacs(gen_random_3sat(n, m_, seed));
    });
    m.def("planted_3sat", [](std::uint32_t n, std::size_t m_, std::uint64_t seed) {
        const auto inst = gen_planted_satisfiable(n, m_, seed);
        return py::make_tuple(to_dimacs(inst.formula), inst.assignment.bits);
    });
    m.def("max_val", [](const std::string& dimacs) {
        const auto r = max_val(parse_dimacs(dimacs));
        return py::make_tuple(fraction(r.value), r.maximizer.bits);
    });
    m.def("vertex_count", [](std::uint32_t n, std::uint32_t ell) { return pyint(vertex_count(n, ell)); });

    m.def(
        "reduction_graph",
        [](const std::string& dimacs, std::uint32_t ell, std::uint64_t vertex_cap) {
            const ReductionGraph rg(parse_dimacs(dimacs), ell);
            const ExplicitGraph g = rg.materialize(vertex_cap);
            const auto list = g.edges();
            std::vector<std::pair<Vertex, Vertex>> edges(list.begin(), list.end());
            return py::make_tuple(g.num_vertices(), edges, pyint(rg.clique_size()));
        },
        py::arg("dimacs"), py::arg("ell"), py::arg("vertex_cap") = kDefaultVertexCap);

    m.def("exact_dks", [](std::size_t n, const std::vector<std::pair<Vertex, Vertex>>& edges,
                          std::size_t k) { return solution(exact_dks(graph_from(n, edges), k)); });
    m.def("greedy_peel", [](std::size_t n, const std::vector<std::pair<Vertex, Vertex>>& edges,
                            std::size_t k) { return solution(greedy_peel(graph_from(n, edges), k)); });
    m.def("biclique_count", [](std::size_t n, const std::vector<std::pair<Vertex, Vertex>>& edges,
                               std::uint32_t t) {
        return pyint(count_labeled_bicliques(graph_from(n, edges), t));
    });

    m.def("avoid_probability",
          [](std::uint32_t u, const std::vector<std::pair<std::uint32_t, std::uint32_t>>& pairs,
             std::uint32_t r) {
              std::vector<ElementPair> p(pairs.begin(), pairs.end());
              return fraction(exact_avoid_probability(PairFamily(u, p, r)));
          });

    m.def("params", [](const std::string& eps, std::uint32_t d, std::uint32_t n, std::uint32_t ell) {
        const SoundnessParams p = compute_params(parse_rational(eps), d, n, ell);
        py::dict out;
        out["beta"] = fraction(p.beta);
        out["lambda_branch"] = std::string(to_string(p.branch));
        out["lambda"] = py::make_tuple(p.lambda.lower_double(), p.lambda.upper_double());
        out["delta"] = py::make_tuple(p.delta.lower_double(), p.delta.upper_double());
        out["t_ceil"] = pyint(p.t_ceil);
        out["in_hypothesis_range"] = p.in_hypothesis_range;
        return out;
    });

    m.def("run_cli", [](const std::vector<std::string>& args) {
        std::vector<std::string> full{"dksred"};
        full.insert(full.end(), args.begin(), args.end());
        std::vector<const char*> argv;
        for (const auto& a : full) {
            argv.push_back(a.c_str());
        }
        std::ostringstream out;
        std::ostringstream err;
        const int code = cli::run_command_line(static_cast<int>(argv.size()), argv.data(), out, err);
        return py::make_tuple(code, out.str(), err.str());
    });
}
