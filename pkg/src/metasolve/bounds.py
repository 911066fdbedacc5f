"""Objective bounds computed from problem inputs alone.

Each problem type gets one cheap relaxation: routing problems a lower bound,
knapsack an upper bound, binary-quadratic models a lower bound. Sampling jobs
borrow the bound of their embedded model. Bounds never require a solution,
so the comparison endpoint can report gaps as soon as one exists.
"""

from __future__ import annotations

from dataclasses import dataclass

from metasolve.errors import MetasolveError
from metasolve.formats import (
    Qubo,
    TspInstance,
    VrpInstance,
    distance,
    parse_knapsack,
    parse_qubo,
    parse_tsp,
    parse_vrp,
)
from metasolve.quantum import parse_quantum_job

GAP_FLOOR = 1e-12


class UnboundedProblemType(MetasolveError):
    """No bound rule is registered for the problem type."""


@dataclass(frozen=True)
class BoundReport:
    bound_type: str  # "LOWER" or "UPPER"
    value: float
    method: str


@dataclass(frozen=True)
class BoundComparison:
    bound: BoundReport
    solution_value: float
    absolute_gap: float
    relative_gap: float


def _incident_edge_bound(nodes, dist) -> float:
    # Every node contributes two tour edges; half the sum of its two
    # cheapest incident edges can never exceed the node's true share.
    total = 0.0
    ids = [n.node_id for n in nodes]
    for u in ids:
        incident = sorted(dist(u, v) for v in ids if v != u)
        # a 2-node instance walks its only edge twice
        second = incident[1] if len(incident) > 1 else incident[0]
        total += incident[0] + second
    return total / 2.0


def tsp_lower_bound(instance: TspInstance) -> BoundReport:
    value = _incident_edge_bound(
        instance.nodes, lambda u, v: distance(instance, u, v)
    )
    return BoundReport("LOWER", value, "two-smallest-incident-edges")


def vrp_lower_bound(instance: VrpInstance) -> BoundReport:
    value = _incident_edge_bound(
        instance.nodes, lambda u, v: distance(instance, u, v)
    )
    return BoundReport("LOWER", value, "two-smallest-incident-edges")


def knapsack_upper_bound(instance) -> BoundReport:
    # Dantzig bound: fill by value density, take the break item fractionally.
    items = sorted(
        (item for item in instance.items if item.value > 0),
        key=lambda item: (-(item.value / item.weight) if item.weight else float("-inf"), item.item_id),
    )
    remaining = instance.capacity
    value = 0.0
    for item in items:
        if item.weight == 0:
            value += item.value
            continue
        if item.weight <= remaining:
            value += item.value
            remaining -= item.weight
        else:
            value += item.value * (remaining / item.weight)
            break
    return BoundReport("UPPER", value, "fractional-greedy")


def qubo_lower_bound(qubo: Qubo) -> BoundReport:
    value = qubo.offset + sum(c for c in qubo.coefficients.values() if c < 0)
    return BoundReport("LOWER", value, "negative-coefficient-sum")


def bound_for(type_id: str, input_text: str) -> BoundReport:
    if type_id == "tsp":
        return tsp_lower_bound(parse_tsp(input_text))
    if type_id == "cluster-vrp":
        return vrp_lower_bound(parse_vrp(input_text))
    if type_id == "knapsack":
        return knapsack_upper_bound(parse_knapsack(input_text))
    if type_id == "qubo":
        return qubo_lower_bound(parse_qubo(input_text))
    if type_id == "quantum-circuit-processing":
        return qubo_lower_bound(parse_quantum_job(input_text).qubo)
    raise UnboundedProblemType(f"no bound rule for problem type '{type_id}'")


def compare(bound: BoundReport, solution_value: float) -> BoundComparison:
    gap = abs(solution_value - bound.value)
    return BoundComparison(
        bound=bound,
        solution_value=solution_value,
        absolute_gap=gap,
        relative_gap=gap / max(abs(bound.value), GAP_FLOOR),
    )
