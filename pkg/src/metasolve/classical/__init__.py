"""Classical solvers for TSP, knapsack and VRP."""

from metasolve.classical.knapsack import (
    KnapsackSolution,
    knapsack_branch_bound,
    knapsack_dp,
)
from metasolve.classical.tsp import (
    Tour,
    build_tour,
    tsp_held_karp,
    tsp_nearest_neighbor,
    tsp_two_opt,
)
from metasolve.classical.vrp import (
    ValidationReport,
    Violation,
    validate_routes,
    vrp_brute_force,
    vrp_savings,
)

__all__ = [
    "KnapsackSolution",
    "knapsack_dp",
    "knapsack_branch_bound",
    "Tour",
    "build_tour",
    "tsp_nearest_neighbor",
    "tsp_two_opt",
    "tsp_held_karp",
    "ValidationReport",
    "Violation",
    "validate_routes",
    "vrp_savings",
    "vrp_brute_force",
]
