"""Instance and solution text formats.

Routing instances use a strict TSPLIB-inspired subset (EUC_2D only, exact
real-valued distances, no integer rounding). QUBOs use a sparse
upper-triangle coefficient format. Solutions are short line-oriented
documents.
"""

from metasolve.formats.instances import (
    Node,
    TspInstance,
    VrpInstance,
    distance,
    parse_tsp,
    parse_vrp,
    serialize_tsp,
    serialize_vrp,
)
from metasolve.formats.knapsack import (
    KnapsackInstance,
    KnapsackItem,
    parse_knapsack,
    parse_knapsack_solution,
    serialize_knapsack,
    serialize_knapsack_solution,
)
from metasolve.formats.qubo import (
    Qubo,
    parse_bitstring_solution,
    parse_qubo,
    serialize_bitstring_solution,
    serialize_qubo,
)
from metasolve.formats.solutions import (
    RouteSolution,
    parse_routes,
    serialize_routes,
)

__all__ = [
    "Node",
    "TspInstance",
    "VrpInstance",
    "distance",
    "parse_tsp",
    "parse_vrp",
    "serialize_tsp",
    "serialize_vrp",
    "KnapsackInstance",
    "KnapsackItem",
    "parse_knapsack",
    "serialize_knapsack",
    "parse_knapsack_solution",
    "serialize_knapsack_solution",
    "Qubo",
    "parse_qubo",
    "serialize_qubo",
    "parse_bitstring_solution",
    "serialize_bitstring_solution",
    "RouteSolution",
    "parse_routes",
    "serialize_routes",
]
