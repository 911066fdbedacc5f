"""Customer clustering strategies.

two_phase_cluster grows one capacity-feasible cluster at a time: a
farthest-point seed, then a knapsack choice over the remaining customers
that favors proximity to the seed. kmeans_cluster runs seeded Lloyd
iterations followed by a capacity repair loop.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Callable

from metasolve.classical.knapsack import KnapsackSolution, knapsack_dp
from metasolve.errors import Infeasible
from metasolve.formats.instances import VrpInstance, distance
from metasolve.formats.knapsack import KnapsackInstance, KnapsackItem

KnapsackSolver = Callable[[KnapsackInstance], KnapsackSolution]


@dataclass(frozen=True)
class Clustering:
    clusters: tuple[tuple[int, ...], ...]
    seeds: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        flat = [c for cluster in self.clusters for c in cluster]
        if len(flat) != len(set(flat)):
            raise ValueError("clusters overlap")


def _diameter(instance: VrpInstance) -> float:
    ids = instance.node_ids
    best = 0.0
    for i, a in enumerate(ids):
        for b in ids[i + 1 :]:
            d = distance(instance, a, b)
            if d > best:
                best = d
    return best


def two_phase_cluster(
    instance: VrpInstance, knapsack_solver: KnapsackSolver = knapsack_dp
) -> Clustering:
    """Seed-and-fill clustering; deterministic for a fixed knapsack solver.

    Seeds follow the farthest-point rule against the depot and all earlier
    seeds (ties to the smallest id). Each cluster is filled by a knapsack
    over the unassigned customers with weight = demand and value =
    diameter - distance(customer, seed), capacity = vehicle capacity minus
    the seed demand.
    """
    if any(instance.demand[c] > instance.capacity for c in instance.customers):
        raise Infeasible("a customer demand exceeds vehicle capacity")
    unassigned = set(instance.customers)
    diameter = _diameter(instance)
    anchors = [instance.depot]
    clusters: list[tuple[int, ...]] = []
    seeds: list[int] = []
    while unassigned:
        seed = max(
            sorted(unassigned),
            key=lambda c: min(distance(instance, c, a) for a in anchors),
        )
        unassigned.remove(seed)
        items = tuple(
            KnapsackItem(
                item_id=c,
                weight=instance.demand[c],
                value=diameter - distance(instance, c, seed),
            )
            for c in sorted(unassigned)
        )
        chosen = knapsack_solver(
            KnapsackInstance(items=items, capacity=instance.capacity - instance.demand[seed])
        ).chosen
        # A customer at exactly diameter distance from the seed is worth 0 to
        # the knapsack, so a maximizer may drop it even though it fits. Keep
        # the fill maximal, otherwise feasible instances waste vehicles.
        residual = instance.capacity - instance.demand[seed] - sum(
            instance.demand[c] for c in chosen
        )
        extras = []
        for item in items:
            if item.item_id in chosen or item.value > 0.0:
                continue
            if item.weight <= residual:
                extras.append(item.item_id)
                residual -= item.weight
        cluster = tuple(sorted((seed, *chosen, *extras)))
        clusters.append(cluster)
        seeds.append(seed)
        unassigned.difference_update(chosen)
        unassigned.difference_update(extras)
        anchors.append(seed)
    if instance.max_vehicles is not None and len(clusters) > instance.max_vehicles:
        raise Infeasible(
            f"clustering needs {len(clusters)} vehicles but only {instance.max_vehicles} allowed"
        )
    return Clustering(clusters=tuple(clusters), seeds=tuple(seeds))


def kmeans_cluster(
    instance: VrpInstance, k: int = 0, seed: int = 0, max_iterations: int = 50
) -> Clustering:
    """Seeded Lloyd iterations on customer coordinates plus capacity repair.

    k = 0 picks ceil(total demand / capacity). Repair moves the cheapest
    customer out of each overloaded cluster into the nearest cluster with
    slack; Infeasible when no such move exists.
    """
    customers = sorted(instance.customers)
    if k <= 0:
        total = sum(instance.demand[c] for c in customers)
        k = max(1, math.ceil(total / instance.capacity))
    if k > len(customers):
        raise Infeasible(f"k={k} exceeds the {len(customers)} customers")
    if any(instance.demand[c] > instance.capacity for c in instance.customers):
        raise Infeasible("a customer demand exceeds vehicle capacity")

    rng = random.Random(seed)
    coords = {c: (instance.node(c).x, instance.node(c).y) for c in customers}
    # Farthest-first initialization: a random draw can land two centroids in
    # the same natural group and Lloyd never recovers from that.
    chosen = [rng.choice(customers)]
    while len(chosen) < k:
        chosen.append(
            max(
                sorted(c for c in customers if c not in chosen),
                key=lambda c: min(_sq(coords[c], coords[s]) for s in chosen),
            )
        )
    centroids = [coords[c] for c in chosen]
    assignment: dict[int, int] = {}
    for _ in range(max_iterations):
        new_assignment = {
            c: min(range(k), key=lambda g: _sq(coords[c], centroids[g])) for c in customers
        }
        if new_assignment == assignment:
            break
        assignment = new_assignment
        for g in range(k):
            members = [coords[c] for c in customers if assignment[c] == g]
            if members:
                centroids[g] = (
                    sum(x for x, _ in members) / len(members),
                    sum(y for _, y in members) / len(members),
                )

    loads = [0] * k
    for c in customers:
        loads[assignment[c]] += instance.demand[c]

    while True:
        overloaded = [g for g in range(k) if loads[g] > instance.capacity]
        if not overloaded:
            break
        g = overloaded[0]
        best_move: tuple[float, int, int] | None = None
        for c in sorted(cc for cc in customers if assignment[cc] == g):
            demand = instance.demand[c]
            targets = [
                t for t in range(k) if t != g and loads[t] + demand <= instance.capacity
            ]
            if not targets:
                continue
            target = min(targets, key=lambda t: (_sq(coords[c], centroids[t]), t))
            increase = math.sqrt(_sq(coords[c], centroids[target])) - math.sqrt(
                _sq(coords[c], centroids[g])
            )
            if best_move is None or (increase, c) < (best_move[0], best_move[1]):
                best_move = (increase, c, target)
        if best_move is None:
            raise Infeasible(f"cannot repair overloaded cluster of load {loads[g]}")
        _, c, target = best_move
        loads[g] -= instance.demand[c]
        loads[target] += instance.demand[c]
        assignment[c] = target

    clusters = tuple(
        tuple(c for c in customers if assignment[c] == g)
        for g in range(k)
        if any(assignment[c] == g for c in customers)
    )
    return Clustering(clusters=clusters)


def _sq(a: tuple[float, float], b: tuple[float, float]) -> float:
    return (a[0] - b[0]) ** 2 + (a[1] - b[1]) ** 2
