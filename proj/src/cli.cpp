#include "dksred/cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "dksred/birthday.hpp"
#include "dksred/dks.hpp"
#include "dksred/formula.hpp"
#include "dksred/graph.hpp"
#include "dksred/reduction.hpp"
#include "dksred/rng.hpp"
#include "dksred/soundness.hpp"

namespace dksred::cli {

namespace {

using Json = nlohmann::ordered_json;
namespace fs = std::filesystem;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw UsageError("cannot read " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << content) || !out.flush()) {
        throw UsageError("cannot write " + path.string());
    }
}

fs::path prepare_dir(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
        throw UsageError("cannot create " + dir + ": " + ec.message());
    }
    return fs::path(dir);
}

std::string hex64(std::uint64_t x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(x));
    return buf;
}

std::string utc_timestamp() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

Json rational_json(const Rational& q) {
    return Json{{"exact", to_string(q)}, {"approx", to_double(q)}};
}

Json interval_json(const Interval& x) {
    return Json{{"lo", x.lower_double()}, {"hi", x.upper_double()}, {"precision", x.precision()}};
}

const std::string& input_path(const RunConfig& c, const char* what) {
    if (c.inputs.empty()) {
        throw UsageError(c.subcommand + " needs " + what);
    }
    return c.inputs.front();
}

CnfFormula load_formula(const RunConfig& c) {
    return parse_dimacs(read_file(input_path(c, "a CNF file")));
}

std::uint32_t require_ell(const RunConfig& c) {
    if (!c.ell) {
        throw UsageError(c.subcommand + " needs --ell");
    }
    return *c.ell;
}

/// Tracks the worst outcome seen across report sections.
struct Outcome {
    bool falsified = false;
    bool exhausted = false;

    std::string status() const {
        return falsified ? "falsified" : exhausted ? "budget-exhausted" : "ok";
    }
    int code() const { return falsified ? kFalsified : exhausted ? kBudgetExhausted : kSuccess; }
    std::string mark(bool pass) {
        falsified = falsified || !pass;
        return pass ? "pass" : "fail";
    }
    std::string exhaust() {
        exhausted = true;
        return "budget-exhausted";
    }
};

void emit(const RunConfig& c, std::ostream& out, const Json& report, const char* file_name) {
    const std::string text = report.dump(2) + "\n";
    if (c.out_dir.empty()) {
        out << text;
    } else {
        write_file(prepare_dir(c.out_dir) / file_name, text);
    }
}

Json manifest(const RunConfig& c) {
    Json m;
    m["tool"] = "dksred";
    m["subcommand"] = c.subcommand;
    m["timestamp"] = utc_timestamp();
    return m;
}

// ---------------------------------------------------------------------------

int cmd_gen(const RunConfig& c, std::ostream& out) {
    if (!c.n) {
        throw UsageError("gen needs --n");
    }
    const std::uint64_t seed = derive_seed(c.seed, "gen");
    std::string text;
    if (c.kind == "csp") {
        text = to_csp_text(gen_counterexample_csp(*c.n, c.sigma, seed, c.d.value_or(2)));
    } else {
        const std::size_t m = c.m.value_or(4 * static_cast<std::uint64_t>(*c.n));
        if (c.kind == "random") {
            text = to_dimacs(gen_random_3sat(*c.n, m, seed));
        } else if (c.kind == "planted") {
            const auto inst = gen_planted_satisfiable(*c.n, m, seed);
            std::string bits;
            for (const bool b : inst.assignment.bits) {
                bits += b ? '1' : '0';
            }
            text = "c planted " + bits + "\n" + to_dimacs(inst.formula);
        } else {
            throw UsageError("unknown --kind " + c.kind);
        }
    }
    if (c.output.empty()) {
        out << text;
    } else {
        write_file(c.output, text);
    }
    return kSuccess;
}

int cmd_reduce(const RunConfig& c, std::ostream& out) {
    const CnfFormula phi = load_formula(c);
    const ReductionGraph rg(phi, require_ell(c));
    Json m = manifest(c);
    m["formula_hash"] = hex64(formula_hash(phi));
    m["n"] = phi.num_vars();
    m["m"] = phi.num_clauses();
    m["ell"] = rg.ell();
    m["N"] = to_string(rg.num_vertices());
    m["k"] = c.k ? std::to_string(*c.k) : to_string(rg.clique_size());
    m["implicit"] = c.implicit;
    if (c.implicit) {
        emit(c, out, m, "manifest.json");
        return kSuccess;
    }
    if (c.out_dir.empty()) {
        throw UsageError("reduce writes files and needs --out-dir (or --implicit)");
    }
    const ExplicitGraph g = rg.materialize(c.budgets.vertex_cap);
    const fs::path dir = prepare_dir(c.out_dir);
    write_file(dir / "graph.edges", to_edge_list(g));
    std::ostringstream legend;
    write_vertex_legend(legend, rg, c.budgets.vertex_cap);
    write_file(dir / "legend.txt", legend.str());
    m["edges"] = g.num_edges();
    m["files"] = {"graph.edges", "legend.txt"};
    write_file(dir / "manifest.json", m.dump(2) + "\n");
    return kSuccess;
}

Json solution_json(const DksSolution& s) {
    return Json{{"k", s.k()},
                {"density", rational_json(s.density)},
                {"optimal", s.optimal},
                {"vertices", s.vertices}};
}

int cmd_analyze(const RunConfig& c, std::ostream& out) {
    const CnfFormula phi = load_formula(c);
    const std::uint32_t ell = require_ell(c);
    const ReductionGraph rg(phi, ell);
    const Rational eps = parse_rational(c.eps);
    const std::uint32_t d = c.d.value_or(5);
    Outcome outcome;

    Json report;
    report["subcommand"] = "analyze";
    report["config"] = {{"n", phi.num_vars()},
                        {"m", phi.num_clauses()},
                        {"ell", ell},
                        {"k", c.k ? std::to_string(*c.k) : to_string(rg.clique_size())},
                        {"t", c.t},
                        {"eps", to_string(eps)},
                        {"d", d},
                        {"seed", c.seed},
                        {"precision", c.precision},
                        {"vertex_cap", c.budgets.vertex_cap},
                        {"enum_cap", c.budgets.enum_cap},
                        {"node_budget", c.budgets.node_budget}};

    Json formula{{"hash", hex64(formula_hash(phi))}, {"max_degree", phi.max_degree()}};
    std::optional<MaxValResult> mv;
    if (phi.num_vars() <= kDefaultExhaustiveLimit) {
        mv = max_val(phi);
        formula["max_val"] = rational_json(mv->value);
        formula["satisfiable"] = mv->value == 1;
    } else {
        formula["max_val"] = nullptr;
    }
    report["formula"] = formula;

    std::optional<ExplicitGraph> g;
    try {
        g = rg.materialize(c.budgets.vertex_cap);
    } catch (const BudgetExceeded& e) {
        report["graph"] = {{"status", outcome.exhaust()}, {"detail", e.what()}};
    }
    if (!g) {
        report["status"] = outcome.status();
        emit(c, out, report, "report.json");
        return outcome.code();
    }
    const std::size_t big_n = g->num_vertices();
    report["graph"] = {{"N", big_n}, {"edges", g->num_edges()},
                       {"density", big_n >= 2 ? rational_json(density(*g)) : Json(nullptr)}};

    // densest k-subgraph
    const BigInt k_big = c.k ? BigInt(std::to_string(*c.k)) : rg.clique_size();
    const bool k_is_clique_size = k_big == rg.clique_size();
    std::optional<DksSolution> best;
    Json dks;
    if (k_big < 2 || k_big > BigInt(std::to_string(big_n))) {
        dks["status"] = "skipped";
        dks["detail"] = "k outside [2, N]";
    } else {
        const std::size_t k = to_u64(k_big);
        DksBudget budget{c.budgets.node_budget, c.budgets.wall_clock};
        best = exact_dks(*g, k, budget);
        dks["status"] = best->optimal ? "pass" : outcome.exhaust();
        dks["exact"] = solution_json(*best);
        const DksSolution peel = greedy_peel(*g, k);
        const DksSolution local = local_search_swap(*g, peel, c.local_iters);
        dks["peel_density"] = rational_json(peel.density);
        dks["local_search_density"] = rational_json(local.density);
        if (best->optimal && (peel.density > best->density || local.density > best->density)) {
            dks["status"] = outcome.mark(false);
        }
    }
    report["dks"] = dks;

    Json completeness;
    if (!mv) {
        completeness["status"] = "skipped";
    } else if (mv->value == 1) {
        const auto witness = rg.clique_witness(mv->maximizer);
        std::vector<Vertex> idx;
        for (const auto& v : witness) {
            idx.push_back(static_cast<Vertex>(to_u64(rg.rank(v))));
        }
        bool pass = true;
        if (idx.size() >= 2) {
            const Rational wd = density(*g, idx);
            completeness["witness_density"] = rational_json(wd);
            pass = wd == 1;
        }
        if (best && best->optimal && k_is_clique_size) {
            completeness["dks_density"] = rational_json(best->density);
            pass = pass && best->density == 1;
        }
        completeness["case"] = "satisfiable";
        completeness["status"] = outcome.mark(pass);
    } else {
        completeness["case"] = "unsatisfiable";
        if (best && best->optimal && k_is_clique_size && ell >= 2 && ell < phi.num_vars()) {
            completeness["dks_density"] = rational_json(best->density);
            completeness["margin"] = rational_json(Rational(1) - best->density);
            completeness["status"] = outcome.mark(best->density < 1);
        } else {
            completeness["status"] = "skipped";
        }
    }
    report["completeness"] = completeness;

    Json cert_json;
    try {
        if (big_n < 2) {
            throw std::invalid_argument("graph too small");
        }
        const BigInt count = count_labeled_bicliques(*g, c.t, c.budgets.enum_cap);
        const DensityCertificate cert = certificate_from_count(count, big_n, c.t);
        const bool alon = alon_bound_holds(count, big_n, g->num_edges(), c.t);
        const bool covers = cert.bound >= density(*g);
        cert_json = {{"t", c.t},
                     {"count", to_string(count)},
                     {"bound", rational_json(cert.bound)},
                     {"precision_bits", cert.precision_bits},
                     {"alon_holds", alon},
                     {"covers_graph_density", covers}};
        bool pass = alon && covers;
        if (best) {
            const auto sub = induced_subgraph(*g, best->vertices);
            const DensityCertificate sub_cert =
                density_certificate(sub.graph, c.t, kCertificatePrecision, c.budgets.enum_cap);
            const bool sub_covers = sub_cert.bound >= best->density;
            cert_json["dks_subgraph_bound"] = rational_json(sub_cert.bound);
            cert_json["covers_dks_density"] = sub_covers;
            pass = pass && sub_covers;
        }
        cert_json["status"] = outcome.mark(pass);
    } catch (const BudgetExceeded& e) {
        cert_json = {{"status", outcome.exhaust()}, {"detail", e.what()}};
    } catch (const std::invalid_argument& e) {
        cert_json = {{"status", "skipped"}, {"detail", e.what()}};
    }
    report["certificate"] = cert_json;

    const SoundnessParams params =
        compute_params(eps, d, phi.num_vars(), ell, static_cast<mpfr_prec_t>(c.precision));
    Json classes;
    std::vector<LemmaRow> rows;
    try {
        const KttEnumeration e = enumerate_ktt_classes(rg, *g, c.t, c.budgets.enum_cap);
        const PartitionCheck part = partition_check(e, *g);
        const ContainmentCheck cont = containment_check(e, rg);
        const ProhibitedPairCheck pp = prohibited_pair_check(e, rg);
        std::size_t eq3_checked = 0;
        std::size_t eq3_failures = 0;
        for (const auto& cls : e.classes) {
            if (classify(cls.a, cls.b, phi).conflicted) {
                continue;
            }
            ++eq3_checked;
            if (!binomial_product_check(static_cast<std::uint32_t>(cls.a.size()),
                                        static_cast<std::uint32_t>(cls.b.size()), ell,
                                        phi.num_vars())) {
                ++eq3_failures;
            }
        }
        classes["total_copies"] = to_string(e.total);
        classes["classes"] = e.classes.size();
        classes["partition"] = {{"class_sum", to_string(part.class_sum)},
                                {"direct_count", to_string(part.direct_count)},
                                {"holds", part.holds}};
        classes["containment"] = {{"classes_checked", cont.classes_checked},
                                  {"vertex_violations", cont.vertex_violations},
                                  {"count_violations", cont.count_violations},
                                  {"conflicted_nonempty", cont.conflicted_nonempty}};
        classes["binomial_product"] = {{"classes_checked", eq3_checked},
                                       {"failures", eq3_failures}};
        classes["prohibited_pairs"] = {{"classes_checked", pp.classes_checked},
                                       {"all_good_classes", pp.all_good_classes},
                                       {"classes_with_unsat", pp.classes_with_unsat},
                                       {"violations", pp.violations},
                                       {"all_good_violations", pp.all_good_violations}};
        classes["status"] = outcome.mark(part.holds && cont.holds() && eq3_failures == 0 &&
                                         pp.violations == 0);
        rows = lemma_bound_report(e, phi, params);
    } catch (const BudgetExceeded& e) {
        classes = {{"status", outcome.exhaust()}, {"detail", e.what()}};
    }
    report["biclique_classes"] = classes;

    Json lemma{{"lambda", interval_json(params.lambda)},
               {"lambda_branch", std::string(to_string(params.branch))},
               {"delta", interval_json(params.delta)},
               {"in_hypothesis_range", params.in_hypothesis_range}};
    std::size_t holds = 0;
    std::size_t fails = 0;
    std::size_t out_of_range = 0;
    for (const auto& row : rows) {
        holds += row.verdict == Verdict::holds ? 1 : 0;
        fails += row.verdict == Verdict::fails ? 1 : 0;
        out_of_range += row.verdict == Verdict::out_of_range ? 1 : 0;
    }
    lemma["rows"] = rows.size();
    lemma["holds"] = holds;
    lemma["fails"] = fails;
    lemma["out_of_range"] = out_of_range;
    lemma["status"] = outcome.mark(fails == 0);
    report["lemma"] = lemma;
    report["status"] = outcome.status();

    if (!c.out_dir.empty()) {
        const fs::path dir = prepare_dir(c.out_dir);
        write_file(dir / "lemma.csv", to_csv(rows));
        Json m = manifest(c);
        m["formula_hash"] = hex64(formula_hash(phi));
        m["files"] = {"report.json", "lemma.csv"};
        write_file(dir / "manifest.json", m.dump(2) + "\n");
    }
    emit(c, out, report, "report.json");
    return outcome.code();
}

int cmd_solve(const RunConfig& c, std::ostream& out) {
    const ExplicitGraph g = parse_edge_list(read_file(input_path(c, "an edge-list file")));
    if (!c.k) {
        throw UsageError("solve needs --k");
    }
    const std::size_t k = *c.k;
    DksSolution s;
    if (c.solver == "exact") {
        s = exact_dks(g, k, DksBudget{c.budgets.node_budget, c.budgets.wall_clock});
    } else if (c.solver == "peel") {
        s = greedy_peel(g, k);
    } else if (c.solver == "neighborhood") {
        s = neighborhood_greedy(g, k, c.greedy_eps);
    } else if (c.solver == "local") {
        s = local_search_swap(g, greedy_peel(g, k), c.local_iters);
    } else {
        throw UsageError("unknown --solver " + c.solver);
    }
    const bool exhausted = c.solver == "exact" && !s.optimal;
    Json report = solution_json(s);
    report["solver"] = c.solver;
    report["status"] = exhausted ? "budget-exhausted" : "ok";
    if (!c.output.empty()) {
        write_file(c.output, to_text(s));
    }
    emit(c, out, report, "solution.json");
    return exhausted ? kBudgetExhausted : kSuccess;
}

int cmd_biclique(const RunConfig& c, std::ostream& out) {
    const ExplicitGraph g = parse_edge_list(read_file(input_path(c, "an edge-list file")));
    if (g.num_vertices() < 2) {
        throw UsageError("biclique needs a graph with at least two vertices");
    }
    Outcome outcome;
    const BigInt count = count_labeled_bicliques(g, c.t, c.budgets.enum_cap);
    const DensityCertificate cert = certificate_from_count(count, g.num_vertices(), c.t);
    const bool alon = alon_bound_holds(count, g.num_vertices(), g.num_edges(), c.t);
    const bool covers = cert.bound >= density(g);
    Json report{{"N", g.num_vertices()},
                {"edges", g.num_edges()},
                {"t", c.t},
                {"count", to_string(count)},
                {"density", rational_json(density(g))},
                {"bound", rational_json(cert.bound)},
                {"alon_holds", alon},
                {"covers_density", covers}};
    outcome.mark(alon && covers);
    report["status"] = outcome.status();
    if (!c.output.empty()) {
        write_file(c.output, to_text(cert));
    }
    emit(c, out, report, "biclique.json");
    return outcome.code();
}

int cmd_birthday(const RunConfig& c, std::ostream& out) {
    std::vector<PairFamily> families;
    Json source;
    if (c.inputs.empty()) {
        families = random_family_corpus(derive_seed(c.seed, "birthday"), c.corpus_size,
                                        c.max_universe);
        source = {{"corpus_seed", c.seed}, {"size", c.corpus_size}, {"max_u", c.max_universe}};
    } else {
        for (const auto& path : c.inputs) {
            families.push_back(parse_family(read_file(path)));
        }
        source = {{"files", c.inputs}};
    }
    const BirthdaySweep sweep = sweep_families(families);
    Outcome outcome;
    outcome.mark(sweep.all_hold());
    Json report{{"source", source},
                {"families", sweep.families},
                {"rows", sweep.rows.size()},
                {"bound_failures", sweep.bound_failures},
                {"pruning_failures", sweep.pruning_failures},
                {"product_failures", sweep.product_failures},
                {"monotonicity_failures", sweep.monotonicity_failures},
                {"status", outcome.status()}};
    if (!c.out_dir.empty()) {
        write_file(prepare_dir(c.out_dir) / "birthday.csv", to_csv(sweep));
    }
    emit(c, out, report, "birthday.json");
    return outcome.code();
}

RateFunction parse_rate(const std::string& text) {
    RateFunction f;
    if (text == "inverse-log2") {
        f.kind = RateFunction::Kind::inverse_log2;
    } else {
        f.kind = RateFunction::Kind::constant;
        f.value = parse_rational(text);
    }
    return f;
}

int cmd_params(const RunConfig& c, std::ostream& out) {
    const Rational eps = parse_rational(c.eps);
    const std::uint32_t d = c.d.value_or(5);
    const bool sized = c.n && c.ell;
    const SoundnessParams p = compute_params(eps, d, sized ? *c.n : 1, sized ? *c.ell : 1,
                                             static_cast<mpfr_prec_t>(c.precision));
    Json report{{"eps", to_string(eps)},
                {"d", d},
                {"beta", rational_json(p.beta)},
                {"branches",
                 {{"log_term", interval_json(p.log_branch)},
                  {"beta_over_64", rational_json(p.beta_branch)},
                  {"eps_over_384d", rational_json(p.eps_branch)}}},
                {"lambda", interval_json(p.lambda)},
                {"lambda_branch", std::string(to_string(p.branch))},
                {"delta", interval_json(p.delta)}};
    if (p.lambda_exact) {
        report["lambda_exact"] = to_string(*p.lambda_exact);
    }
    if (sized) {
        report["n"] = p.n;
        report["ell"] = p.ell;
        report["t"] = interval_json(p.t);
        report["t_ceil"] = to_string(p.t_ceil);
        report["density_bound"] = interval_json(p.density_bound);
        report["in_hypothesis_range"] = p.in_hypothesis_range;
    }
    if (c.schedule) {
        if (!c.schedule_m) {
            throw UsageError("--schedule needs --m");
        }
        ScheduleMode mode;
        if (*c.schedule == "eth") {
            mode = ScheduleMode::eth;
        } else if (*c.schedule == "gap-eth") {
            mode = ScheduleMode::gap_eth;
        } else {
            throw UsageError("unknown --schedule " + *c.schedule);
        }
        const auto rate = mode == ScheduleMode::gap_eth ? std::optional(parse_rate(c.rate))
                                                        : std::nullopt;
        const std::uint64_t ell = ell_schedule(mode, *c.schedule_m, rate, c.n);
        Json sched{{"mode", *c.schedule}, {"m", *c.schedule_m}, {"ell", ell}};
        if (rate) {
            sched["rate"] = c.rate;
        }
        report["schedule"] = sched;
    }
    report["status"] = "ok";
    emit(c, out, report, "params.json");
    return kSuccess;
}

int cmd_counterexample(const RunConfig& c, std::ostream& out) {
    const std::uint32_t n = c.n.value_or(24);
    const std::uint32_t ell = c.ell.value_or(1);
    const std::uint32_t d = c.d.value_or(2);
    const NonBooleanCsp csp = gen_counterexample_csp(n, c.sigma, derive_seed(c.seed, "counterexample"), d);
    const CspBicliqueWitness w = counterexample_biclique(csp, ell, c.budgets.enum_cap);
    const bool verified = verify_biclique(CspReductionGraph(csp, ell), w);
    Outcome outcome;
    outcome.mark(verified && w.sides_meet_certified && !csp.crosses_halves() &&
                 (!w.size_claim_applies || w.certified_meets_target));
    Json report{{"n", n},
                {"sigma", c.sigma},
                {"d", d},
                {"ell", ell},
                {"seed", c.seed},
                {"max_degree", csp.max_degree()},
                {"crosses_halves", csp.crosses_halves()},
                {"left_size", w.left.size()},
                {"right_size", w.right.size()},
                {"certified_size", to_string(w.certified_size)},
                {"target_size", to_string(w.target_size)},
                {"size_claim_applies", w.size_claim_applies},
                {"sides_meet_certified", w.sides_meet_certified},
                {"certified_meets_target", w.certified_meets_target},
                {"verified", verified},
                {"status", outcome.status()}};
    if (!c.out_dir.empty()) {
        write_file(prepare_dir(c.out_dir) / "instance.csp", to_csp_text(csp));
    }
    emit(c, out, report, "counterexample.json");
    return outcome.code();
}

int cmd_report_merge(const RunConfig& c, std::ostream& out) {
    if (c.inputs.empty()) {
        throw UsageError("report-merge needs at least one report");
    }
    Outcome outcome;
    Json reports = Json::array();
    for (const auto& path : c.inputs) {
        Json r;
        try {
            r = Json::parse(read_file(path));
        } catch (const Json::parse_error& e) {
            throw UsageError(path + ": " + e.what());
        }
        const std::string status = r.value("status", "ok");
        outcome.falsified = outcome.falsified || status == "falsified";
        outcome.exhausted = outcome.exhausted || status == "budget-exhausted";
        reports.push_back({{"source", fs::path(path).filename().string()}, {"report", r}});
    }
    Json merged{{"reports", reports}, {"status", outcome.status()}};
    emit(c, out, merged, "merged.json");
    return outcome.code();
}

std::uint64_t env_u64(const char* name, std::uint64_t fallback) {
    const char* v = std::getenv(name);
    if (v == nullptr || *v == '\0') {
        return fallback;
    }
    char* end = nullptr;
    const unsigned long long x = std::strtoull(v, &end, 10);
    if (*end != '\0' || x == 0) {
        throw UsageError(std::string(name) + " must be a positive integer");
    }
    return x;
}

}  // namespace

Budgets budgets_from_env() {
    Budgets b;
    b.vertex_cap = env_u64("DKSRED_VERTEX_CAP", b.vertex_cap);
    b.enum_cap = env_u64("DKSRED_ENUM_CAP", b.enum_cap);
    b.node_budget = env_u64("DKSRED_NODE_BUDGET", b.node_budget);
    return b;
}

int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
    try {
        if (c.budgets.vertex_cap == 0 || c.budgets.enum_cap == 0 || c.budgets.node_budget == 0) {
            throw UsageError("budgets must be positive");
        }
        if (c.t < 1) {
            throw UsageError("--t must be at least 1");
        }
        if (c.subcommand == "gen") return cmd_gen(c, out);
        if (c.subcommand == "reduce") return cmd_reduce(c, out);
        if (c.subcommand == "analyze") return cmd_analyze(c, out);
        if (c.subcommand == "solve") return cmd_solve(c, out);
        if (c.subcommand == "biclique") return cmd_biclique(c, out);
        if (c.subcommand == "birthday") return cmd_birthday(c, out);
        if (c.subcommand == "params") return cmd_params(c, out);
        if (c.subcommand == "counterexample") return cmd_counterexample(c, out);
        if (c.subcommand == "report-merge") return cmd_report_merge(c, out);
        throw UsageError("unknown subcommand '" + c.subcommand + "'");
    } catch (const BudgetExceeded& e) {
        err << "budget exhausted: " << e.what() << '\n';
        return kBudgetExhausted;
    } catch (const DimacsError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
}

int run_command_line(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    RunConfig c;
    try {
        c.budgets = budgets_from_env();
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
    std::optional<std::uint64_t> time_limit_ms;

    CLI::App app{"Reduction graph toolkit: 3SAT to Densest k-Subgraph"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "dksred 0.1.0");

    const auto common = [&](CLI::App* s) {
        s->add_option("--seed", c.seed, "Root seed");
        s->add_option("--vertex-cap", c.budgets.vertex_cap, "Max materialized vertices");
        s->add_option("--enum-cap", c.budgets.enum_cap, "Max enumerated biclique copies");
        s->add_option("--node-budget", c.budgets.node_budget, "Max branch-and-bound nodes");
        s->add_option("--time-limit-ms", time_limit_ms, "Wall-clock limit for exact DkS");
        s->add_option("--precision", c.precision, "Interval precision in bits")
            ->check(CLI::Range(16U, 8192U));
        s->add_option("-o,--out-dir", c.out_dir, "Directory for report files");
    };

    auto* gen = app.add_subcommand("gen", "Generate a random, planted, or CSP instance");
    gen->add_option("--kind", c.kind)->check(CLI::IsMember({"random", "planted", "csp"}));
    gen->add_option("--n", c.n)->required();
    gen->add_option("--m", c.m, "Clauses (default 4n)");
    gen->add_option("--sigma", c.sigma, "Alphabet size for --kind csp");
    gen->add_option("--d", c.d, "Constraint degree for --kind csp");
    gen->add_option("--output", c.output, "Output file (default stdout)");
    gen->add_option("--seed", c.seed);

    auto* reduce = app.add_subcommand("reduce", "Build the reduction graph");
    reduce->add_option("input", c.inputs, "DIMACS file")->required();
    reduce->add_option("--ell", c.ell)->required();
    reduce->add_option("--k", c.k);
    reduce->add_flag("--implicit", c.implicit, "Write the manifest only");
    common(reduce);

    auto* analyze = app.add_subcommand("analyze", "Run every check on one instance");
    analyze->add_option("input", c.inputs, "DIMACS file")->required();
    analyze->add_option("--ell", c.ell)->required();
    analyze->add_option("--k", c.k);
    analyze->add_option("--t", c.t);
    analyze->add_option("--eps", c.eps);
    analyze->add_option("--d", c.d);
    common(analyze);

    auto* solve = app.add_subcommand("solve", "Densest k-subgraph on an edge list");
    solve->add_option("input", c.inputs, "Edge-list file")->required();
    solve->add_option("--k", c.k)->required();
    solve->add_option("--solver", c.solver)
        ->check(CLI::IsMember({"exact", "peel", "neighborhood", "local"}));
    solve->add_option("--greedy-eps", c.greedy_eps);
    solve->add_option("--local-iters", c.local_iters);
    solve->add_option("--output", c.output, "Write the solution as text");
    common(solve);

    auto* biclique = app.add_subcommand("biclique", "Count labelled K_{t,t} and certify density");
    biclique->add_option("input", c.inputs, "Edge-list file")->required();
    biclique->add_option("--t", c.t);
    biclique->add_option("--output", c.output, "Write the certificate block");
    common(biclique);

    auto* birthday = app.add_subcommand("birthday", "Pair-avoidance sweep");
    birthday->add_option("input", c.inputs, "Family files (default: seeded corpus)");
    birthday->add_option("--size", c.corpus_size);
    birthday->add_option("--max-u", c.max_universe)->check(CLI::Range(2U, 20U));
    common(birthday);

    auto* params = app.add_subcommand("params", "Soundness parameters and ell schedules");
    params->add_option("--eps", c.eps);
    params->add_option("--d", c.d);
    params->add_option("--n", c.n);
    params->add_option("--ell", c.ell);
    params->add_option("--schedule", c.schedule)->check(CLI::IsMember({"eth", "gap-eth"}));
    params->add_option("--m", c.schedule_m);
    params->add_option("--rate", c.rate, "inverse-log2 or a rational constant");
    common(params);

    auto* counter = app.add_subcommand("counterexample", "Non-boolean biclique witness");
    counter->add_option("--n", c.n);
    counter->add_option("--sigma", c.sigma);
    counter->add_option("--d", c.d);
    counter->add_option("--ell", c.ell);
    common(counter);

    auto* merge = app.add_subcommand("report-merge", "Merge JSON reports");
    merge->add_option("input", c.inputs, "Report files")->required();
    merge->add_option("-o,--out-dir", c.out_dir);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kUsage;
    }
    c.subcommand = app.get_subcommands().front()->get_name();
    if (time_limit_ms) {
        c.budgets.wall_clock = std::chrono::milliseconds(*time_limit_ms);
    }
    return run(c, out, err);
}

}  // namespace dksred::cli
