#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "dksred/birthday.hpp"
#include "dksred/cli.hpp"
#include "dksred/dks.hpp"
#include "dksred/rng.hpp"
#include "dksred/soundness.hpp"
#include "oracles.hpp"

using namespace dksred;
namespace fs = std::filesystem;

namespace {

struct Check {
    bool pass = true;
    std::string detail;
};

Check fail(const std::string& why) { return {false, why}; }

std::size_t edge_count(const std::size_t k) { return k * (k - 1) / 2; }

// 1
Check completeness() {
    std::size_t done = 0;
    for (std::uint64_t seed = 0; done < 50; ++seed) {
        const std::uint32_t n = 4 + static_cast<std::uint32_t>(seed % 5);
        const std::uint32_t ell = 1 + static_cast<std::uint32_t>((seed / 5) % 3);
        const auto inst = gen_planted_satisfiable(n, 3 * n, 1000 + seed);
        const ReductionGraph rg(inst.formula, ell);
        const ExplicitGraph g = rg.materialize();
        std::vector<Vertex> idx;
        for (const auto& v : rg.clique_witness(inst.assignment)) {
            idx.push_back(static_cast<Vertex>(to_u64(rg.rank(v))));
        }
        const std::size_t k = idx.size();
        if (k >= 2 && density(g, idx) != 1) {
            return fail("witness not a clique at seed " + std::to_string(seed));
        }
        if (k >= 2) {
            const DksSolution s = exact_dks(g, k);
            if (!s.optimal || s.density != 1) {
                return fail("exact DkS below 1 at seed " + std::to_string(seed));
            }
        }
        ++done;
    }
    return {true, "50 planted instances, n 4..8, ell 1..3"};
}

// 2
Check unsatisfiable_direction() {
    std::size_t found = 0;
    Rational worst_margin(1);
    for (std::uint64_t seed = 0; found < 25 && seed < 10000; ++seed) {
        const std::uint32_t n = 5;
        const CnfFormula phi = gen_random_3sat(n, 40, 5000 + seed);
        const Rational val = max_val(phi).value;
        if (val == 1) {
            continue;
        }
        const ReductionGraph rg(phi, 2);
        const ExplicitGraph g = rg.materialize();
        const DksSolution s = exact_dks(g, to_u64(rg.clique_size()));
        if (!s.optimal) {
            return fail("budget exhausted at seed " + std::to_string(seed));
        }
        if (s.density >= 1) {
            return fail("density 1 on an unsatisfiable formula, seed " + std::to_string(seed));
        }
        const Rational margin = Rational(1) - s.density;
        worst_margin = std::min(worst_margin, margin);
        ++found;
    }
    if (found < 25) {
        return fail("only " + std::to_string(found) + " unsatisfiable instances found");
    }
    return {true, "25 unsatisfiable instances, n 5, ell 2, smallest margin " +
                      to_string(worst_margin)};
}

// 3
Check alon_counting() {
    const ExplicitGraph tri(3, std::vector<Edge>{{0, 1}, {1, 2}, {0, 2}});
    if (count_labeled_bicliques(tri, 1) != 6 || count_labeled_bicliques(tri, 2) != 18) {
        return fail("triangle counts");
    }
    std::size_t graphs = 0;
    for (std::uint64_t seed = 0; graphs < 1000; ++seed) {
        const std::size_t n = 2 + seed % 7;
        const ExplicitGraph g = oracle::random_graph(n, 1 + seed % 4, 5, 77 + seed);
        for (std::uint32_t t = 1; t <= 2; ++t) {
            if (!alon_bound_check(g, t)) {
                return fail("falsified at seed " + std::to_string(seed));
            }
        }
        ++graphs;
    }
    return {true, "1000 graphs, N <= 8, t in {1,2}"};
}

// 4
Check birthday() {
    if (exact_avoid_probability(PairFamily(4, {{0, 1}}, 2)) != Rational(5, 6) ||
        exact_avoid_probability(PairFamily(4, {{0, 1}, {2, 3}}, 2)) != Rational(2, 3)) {
        return fail("pinned values");
    }
    const auto corpus = random_family_corpus(derive_seed(1, "birthday"), 500, 12);
    const BirthdaySweep sweep = sweep_families(corpus);
    if (sweep.bound_failures != 0) {
        return fail(std::to_string(sweep.bound_failures) + " bound failures");
    }
    if (sweep.pruning_failures != 0) {
        return fail(std::to_string(sweep.pruning_failures) + " pruning failures");
    }
    return {true, std::to_string(sweep.families) + " families, " +
                      std::to_string(sweep.rows.size()) + " (family, r) rows"};
}

struct DeskInstance {
    CnfFormula phi;
    std::uint32_t ell;
};

std::vector<DeskInstance> desk_corpus() {
    std::vector<DeskInstance> out;
    const std::pair<std::uint32_t, std::uint32_t> shapes[] = {
        {3, 1}, {3, 2}, {3, 3}, {4, 1}, {4, 2}, {4, 3}, {5, 1}, {5, 2}, {6, 1}, {6, 2}};
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
        for (const auto& [n, ell] : shapes) {
            const std::uint64_t s = 31 * seed + n * 7 + ell;
            out.push_back({seed % 2 == 0 ? gen_random_3sat(n, 3 * n, s)
                                         : gen_planted_satisfiable(n, 3 * n, s).formula,
                           ell});
        }
    }
    return out;
}

// 5
Check class_machinery() {
    std::size_t graphs = 0;
    std::size_t classes = 0;
    for (const auto& inst : desk_corpus()) {
        const ReductionGraph rg(inst.phi, inst.ell);
        const ExplicitGraph g = rg.materialize();
        if (g.num_vertices() > 60) {
            return fail("corpus graph above 60 vertices");
        }
        const std::uint32_t max_t = g.num_vertices() <= 24 ? 2 : 1;
        for (std::uint32_t t = 1; t <= max_t; ++t) {
            const KttEnumeration e = enumerate_ktt_classes(rg, g, t);
            if (t == 1 && !partition_check(e, g).holds) {
                return fail("partition identity");
            }
            const ContainmentCheck cc = containment_check(e, rg);
            if (!cc.holds()) {
                return fail("containment");
            }
            classes += cc.classes_checked;
        }
        ++graphs;
    }
    const BinomialScan scan = binomial_product_scan(12);
    if (scan.falsifications != 0) {
        return fail("binomial product scan");
    }
    return {true, std::to_string(graphs) + " graphs, " + std::to_string(classes) +
                      " classes, " + std::to_string(scan.configurations) +
                      " binomial configurations"};
}

// 6
Check prohibited_pairs() {
    std::size_t all_good = 0;
    std::size_t with_unsat = 0;
    std::size_t instances = 0;
    const auto scan = [&](const CnfFormula& phi, std::uint32_t ell, std::uint32_t max_t) {
        const ReductionGraph rg(phi, ell);
        const ExplicitGraph g = rg.materialize();
        for (std::uint32_t t = 1; t <= max_t; ++t) {
            const ProhibitedPairCheck pp =
                prohibited_pair_check(enumerate_ktt_classes(rg, g, t), rg);
            if (pp.all_good_violations != 0 || pp.violations != 0) {
                return false;
            }
            all_good += pp.all_good_classes;
            with_unsat += pp.classes_with_unsat;
        }
        ++instances;
        return true;
    };
    for (const auto& inst : desk_corpus()) {
        if (!scan(inst.phi, inst.ell, inst.phi.num_vars() <= 4 ? 2 : 1)) {
            return fail("a vertex holds two variables of an unsatisfied good clause");
        }
    }
    // dense formulas, where all-good classes with unsatisfied clauses are common
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const std::uint32_t n = 3 + static_cast<std::uint32_t>(seed % 2);
        if (!scan(gen_random_3sat(n, 6 * n, 7000 + seed), 2, 2)) {
            return fail("a vertex holds two variables of an unsatisfied good clause");
        }
    }
    return {true, std::to_string(instances) + " instances, " + std::to_string(all_good) +
                      " all-good classes, " + std::to_string(with_unsat) +
                      " classes with an unsatisfied good clause"};
}

// 7
Check csp_biclique() {
    const NonBooleanCsp csp = gen_counterexample_csp(24, 3, derive_seed(1, "counterexample"), 2);
    const CspBicliqueWitness w = counterexample_biclique(csp, 1);
    const CspReductionGraph g(csp, 1);
    if (w.certified_size != 27 || w.target_size != 24) {
        return fail("certified " + to_string(w.certified_size) + " target " +
                    to_string(w.target_size));
    }
    if (!w.sides_meet_certified || !w.certified_meets_target) {
        return fail("sides below the certified size");
    }
    if (!verify_biclique(g, w)) {
        return fail("witness is not a biclique");
    }
    return {true, "sides " + std::to_string(w.left.size()) + "/" + std::to_string(w.right.size()) +
                      ", certified 27 >= 24"};
}

// 8
Check parameters() {
    const SoundnessParams p = compute_params(Rational(1, 10), 5, 100, 10);
    if (p.branch != LambdaBranch::beta_over_64 || !p.lambda_exact ||
        *p.lambda_exact != Rational(1, 320000)) {
        return fail("lambda branch");
    }
    const Rational delta(BigInt(1), BigInt("819200000000"));
    if (p.delta.lower_rational() > delta || p.delta.upper_rational() < delta) {
        return fail("delta enclosure");
    }
    const double d = p.delta.midpoint_double();
    if (d < 1.22065e-12 || d > 1.22075e-12) {
        return fail("delta value");
    }
    if (ell_schedule(ScheduleMode::eth, 65536) != 256) {
        return fail("eth schedule");
    }
    if (ell_schedule(ScheduleMode::gap_eth, 1024, RateFunction{}) != 646) {
        return fail("gap-eth schedule");
    }
    return {true, "lambda 1/320000, delta 1/819200000000, schedules 256 and 646"};
}

// 9
Check oracle_equivalence() {
    std::size_t dks_cases = 0;
    for (std::size_t n = 2; n <= 10; ++n) {
        for (std::uint64_t seed = 0; seed < 8; ++seed) {
            const ExplicitGraph g = oracle::random_graph(n, 1 + seed % 3, 4, 4001 + 13 * seed + n);
            for (std::size_t k = 2; k <= n; ++k) {
                const DksSolution s = exact_dks(g, k);
                const auto truth = oracle::dks(g, k);
                const Rational expect = oracle::ratio(truth.edges, edge_count(k));
                if (!s.optimal || s.density != expect || s.vertices != truth.set) {
                    return fail("DkS mismatch at n " + std::to_string(n) + " k " + std::to_string(k));
                }
                ++dks_cases;
            }
        }
    }
    std::size_t count_cases = 0;
    for (std::size_t n = 1; n <= 6; ++n) {
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            const ExplicitGraph g = oracle::random_graph(n, 1 + seed % 4, 4, 9001 + 7 * seed + n);
            for (std::uint32_t t = 1; t <= 2; ++t) {
                if (count_labeled_bicliques(g, t) != oracle::biclique_count(g, t)) {
                    return fail("biclique count mismatch");
                }
                ++count_cases;
            }
        }
    }
    return {true, std::to_string(dks_cases) + " DkS cases, " + std::to_string(count_cases) +
                      " count cases"};
}

// 10
Check determinism() {
    const fs::path root = fs::temp_directory_path() / "dksred_acceptance";
    fs::remove_all(root);
    fs::create_directories(root);
    const auto cli = [](std::vector<std::string> args) {
        args.insert(args.begin(), "dksred");
        std::vector<const char*> argv;
        for (const auto& a : args) {
            argv.push_back(a.c_str());
        }
        std::ostringstream out;
        std::ostringstream err;
        return cli::run_command_line(static_cast<int>(argv.size()), argv.data(), out, err);
    };
    const std::string cnf = (root / "f.cnf").string();
    if (cli({"gen", "--n", "5", "--m", "20", "--seed", "9", "--output", cnf}) != 0) {
        return fail("gen");
    }
    for (const char* run : {"a", "b"}) {
        const int code = cli({"analyze", cnf, "--ell", "2", "--t", "2", "--seed", "9", "-o",
                              (root / run).string()});
        if (code != 0 && code != 1) {
            return fail("analyze exit " + std::to_string(code));
        }
    }
    const auto slurp = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream s;
        s << in.rdbuf();
        return s.str();
    };
    for (const char* file : {"report.json", "lemma.csv"}) {
        const std::string a = slurp(root / "a" / file);
        if (a.empty() || a != slurp(root / "b" / file)) {
            return fail(std::string(file) + " differs");
        }
    }
    return {true, "report.json and lemma.csv byte-identical"};
}

}  // namespace

int main() {
    const std::pair<const char*, std::function<Check()>> criteria[] = {
        {"completeness on planted instances", completeness},
        {"unsatisfiable instances stay below density 1", unsatisfiable_direction},
        {"labelled biclique lower bound", alon_counting},
        {"pair-avoidance bound and pruning", birthday},
        {"class partition, containment, binomial product", class_machinery},
        {"prohibited pairs in all-good classes", prohibited_pairs},
        {"non-boolean biclique witness", csp_biclique},
        {"parameter calculator", parameters},
        {"oracle equivalence", oracle_equivalence},
        {"determinism of analyze", determinism},
    };
    int failures = 0;
    int index = 0;
    for (const auto& [name, check] : criteria) {
        ++index;
        const auto start = std::chrono::steady_clock::now();
        Check v;
        try {
            v = check();
        } catch (const std::exception& e) {
            v = fail(std::string("exception: ") + e.what());
        }
        const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                            std::chrono::steady_clock::now() - start)
                            .count();
        std::cout << (v.pass ? "PASS" : "FAIL") << " criterion " << index << ": " << name << " ("
                  << v.detail << ", " << ms << " ms)\n";
        failures += v.pass ? 0 : 1;
    }
    return failures == 0 ? 0 : 1;
}
