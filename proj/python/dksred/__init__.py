"""Python bindings for the dksred reduction toolkit."""

from ._core import (
    BudgetExceeded,
    DimacsError,
    avoid_probability,
    biclique_count,
    exact_dks,
    greedy_peel,
    max_val,
    params,
    planted_3sat,
    random_3sat,
    reduction_graph,
    run_cli,
    vertex_count,
)

__all__ = [
    "BudgetExceeded",
    "DimacsError",
    "avoid_probability",
    "biclique_count",
    "exact_dks",
    "greedy_peel",
    "max_val",
    "params",
    "planted_3sat",
    "random_3sat",
    "reduction_graph",
    "run_cli",
    "vertex_count",
]
