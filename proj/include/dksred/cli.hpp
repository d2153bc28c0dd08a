#pragma once

#include <chrono>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace dksred::cli {

enum ExitCode : int {
    kSuccess = 0,
    kFalsified = 1,
    kUsage = 2,
    kBudgetExhausted = 3,
};

/// Defaults for the three budgets; each can be overridden by an environment
/// variable (DKSRED_VERTEX_CAP, DKSRED_ENUM_CAP, DKSRED_NODE_BUDGET) and then
/// by a flag.
struct Budgets {
    std::uint64_t vertex_cap = 20'000;
    std::uint64_t enum_cap = 50'000'000;
    std::uint64_t node_budget = 100'000'000;
    std::optional<std::chrono::milliseconds> wall_clock;
};

Budgets budgets_from_env();

struct RunConfig {
    std::string subcommand;
    std::vector<std::string> inputs;

    std::optional<std::uint32_t> n;
    std::optional<std::uint64_t> m;
    std::optional<std::uint32_t> ell;
    std::optional<std::uint64_t> k;  // defaults to C(n, ell) where a formula is involved
    std::uint32_t t = 1;
    std::string eps = "1/10";
    std::optional<std::uint32_t> d;  // 5 for params/analyze, 2 for CSP instances
    std::uint64_t seed = 1;
    Budgets budgets;
    unsigned precision = 64;

    std::string out_dir;  // empty: write the main output to stdout
    std::string output;   // single-file output path for gen / solve / biclique

    // gen
    std::string kind = "random";  // random | planted | csp
    std::uint32_t sigma = 3;
    // reduce
    bool implicit = false;
    // solve
    std::string solver = "exact";  // exact | peel | neighborhood | local
    double greedy_eps = 0.5;
    std::uint64_t local_iters = 1000;
    // birthday
    std::uint64_t corpus_size = 500;
    std::uint32_t max_universe = 12;
    // params
    std::optional<std::string> schedule;  // eth | gap-eth
    std::optional<std::uint64_t> schedule_m;
    std::string rate = "inverse-log2";    // inverse-log2 | <rational>
};

/// Validates the config and runs one subcommand. Reports go to `out` (or to
/// files under out_dir), diagnostics to `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv with CLI11 and calls run(); usage errors return kUsage.
int run_command_line(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dksred::cli
