from __future__ import annotations

import itertools
import math
import random

import pytest

from metasolve.classical import knapsack_branch_bound, knapsack_dp, validate_routes
from metasolve.classical.tsp import build_tour
from metasolve.decomposition import (
    cluster_to_tsp,
    clustered_optimum,
    compose_routes,
    kmeans_cluster,
    two_phase_cluster,
)
from metasolve.errors import CompositionError, Infeasible
from metasolve.formats import Node, VrpInstance, distance


def _instance(coords, demands, capacity, max_vehicles=None):
    nodes = tuple(Node(i + 1, x, y) for i, (x, y) in enumerate(coords))
    demand = {1: 0}
    for i, d in enumerate(demands, start=2):
        demand[i] = d
    return VrpInstance(
        name="t", nodes=nodes, depot=1, capacity=capacity, demand=demand, max_vehicles=max_vehicles
    )


# depot at origin, one tight triple to the west, one to the east
TWO_GROUPS = _instance(
    coords=[(0, 0), (-40, 0), (-41, 0), (-40, 1), (40, 0), (41, 0), (40, 1)],
    demands=[1, 1, 1, 1, 1, 1],
    capacity=3,
    max_vehicles=2,
)
WEST = (2, 3, 4)
EAST = (5, 6, 7)


class TestTwoPhase:
    def test_partitions_customers(self):
        rng = random.Random(61)
        for trial in range(20):
            n = rng.randint(2, 9)
            coords = [(rng.uniform(0, 100), rng.uniform(0, 100)) for _ in range(n + 1)]
            demands = [rng.randint(1, 3) for _ in range(n)]
            capacity = max(demands) + 3
            instance = _instance(coords, demands, capacity)
            clustering = two_phase_cluster(instance)
            flat = sorted(c for cluster in clustering.clusters for c in cluster)
            assert flat == sorted(instance.customers)
            for cluster in clustering.clusters:
                assert sum(instance.demand[c] for c in cluster) <= capacity

    def test_separated_groups_recovered(self):
        clustering = two_phase_cluster(TWO_GROUPS)
        groups = {tuple(sorted(c)) for c in clustering.clusters}
        assert groups == {WEST, EAST}

    def test_separated_groups_beat_all_other_partitions(self):
        # Oracle: among capacity-feasible 2-partitions, the produced one
        # minimizes the summed distance of customers to their cluster seed.
        clustering = two_phase_cluster(TWO_GROUPS)
        produced = {tuple(sorted(c)) for c in clustering.clusters}
        customers = TWO_GROUPS.customers

        def seed_cost(cluster):
            best = None
            for seed in cluster:
                cost = sum(distance(TWO_GROUPS, c, seed) for c in cluster)
                if best is None or cost < best:
                    best = cost
            return best

        best_partition = None
        best_cost = None
        for size in range(1, 4):
            for left in itertools.combinations(customers, size):
                right = tuple(c for c in customers if c not in left)
                if not right or len(left) > 3 or len(right) > 3:
                    continue
                cost = seed_cost(left) + seed_cost(right)
                if best_cost is None or cost < best_cost:
                    best_cost = cost
                    best_partition = {tuple(sorted(left)), tuple(sorted(right))}
        assert produced == best_partition

    def test_deterministic(self):
        a = two_phase_cluster(TWO_GROUPS)
        b = two_phase_cluster(TWO_GROUPS)
        assert a == b

    def test_same_value_with_branch_bound(self):
        for solver in (knapsack_dp, knapsack_branch_bound):
            clustering = two_phase_cluster(TWO_GROUPS, knapsack_solver=solver)
            assert {tuple(sorted(c)) for c in clustering.clusters} == {WEST, EAST}

    def test_infeasible_customer(self):
        instance = _instance([(0, 0), (1, 0)], [5], capacity=2)
        with pytest.raises(Infeasible):
            two_phase_cluster(instance)

    def test_vehicle_limit_respected_on_suite_arithmetic(self):
        rng = random.Random(67)
        for n in (4, 5, 6, 7, 8):
            coords = [(rng.uniform(0, 100), rng.uniform(0, 100)) for _ in range(n + 1)]
            instance = _instance(coords, [1] * n, capacity=math.ceil(n / 2), max_vehicles=2)
            clustering = two_phase_cluster(instance)
            assert len(clustering.clusters) <= 2


class TestKmeans:
    def test_singletons_when_k_equals_n(self):
        clustering = kmeans_cluster(TWO_GROUPS, k=6)
        assert sorted(len(c) for c in clustering.clusters) == [1] * 6

    def test_two_groups_any_seed(self):
        for seed in range(10):
            clustering = kmeans_cluster(TWO_GROUPS, k=2, seed=seed)
            assert {tuple(sorted(c)) for c in clustering.clusters} == {WEST, EAST}

    def test_capacity_repair(self):
        # All six customers near one spot; capacity forces a 3/3 split.
        instance = _instance(
            coords=[(0, 0)] + [(10 + i * 0.01, 10) for i in range(6)],
            demands=[1] * 6,
            capacity=3,
        )
        clustering = kmeans_cluster(instance, k=2, seed=1)
        assert sorted(len(c) for c in clustering.clusters) == [3, 3]

    def test_pigeonhole_infeasible(self):
        instance = _instance([(0, 0), (1, 0), (2, 0), (3, 0)], [1, 1, 1], capacity=1)
        with pytest.raises(Infeasible):
            kmeans_cluster(instance, k=2, seed=0)

    def test_default_k_formula(self):
        clustering = kmeans_cluster(TWO_GROUPS, seed=3)
        assert len(clustering.clusters) == 2


class TestComposition:
    def test_cluster_to_tsp_keeps_ids_and_coords(self):
        sub = cluster_to_tsp(TWO_GROUPS, WEST)
        assert sub.node_ids == (1, 2, 3, 4)
        assert sub.node(3).x == TWO_GROUPS.node(3).x

    def test_cluster_with_depot_rejected(self):
        with pytest.raises(CompositionError):
            cluster_to_tsp(TWO_GROUPS, (1, 2))

    def test_compose_rotates_to_depot(self):
        west = build_tour(cluster_to_tsp(TWO_GROUPS, WEST), (2, 1, 3, 4))
        east = build_tour(cluster_to_tsp(TWO_GROUPS, EAST), (1, 5, 6, 7))
        solution = compose_routes(TWO_GROUPS, [west, east])
        assert all(1 not in route for route in solution.routes)
        assert solution.total_length == west.length + east.length
        assert validate_routes(TWO_GROUPS, solution).ok

    def test_compose_rejects_overlap(self):
        t1 = build_tour(cluster_to_tsp(TWO_GROUPS, (2, 3)), (1, 2, 3))
        t2 = build_tour(cluster_to_tsp(TWO_GROUPS, (3, 4)), (1, 3, 4))
        with pytest.raises(CompositionError):
            compose_routes(TWO_GROUPS, [t1, t2])

    def test_compose_rejects_missing_depot(self):
        from metasolve.formats import TspInstance

        nodes = tuple(TWO_GROUPS.node(c) for c in (2, 3, 4, 5))
        headless = build_tour(TspInstance(name="no-depot", nodes=nodes), (2, 3, 4, 5))
        with pytest.raises(CompositionError):
            compose_routes(TWO_GROUPS, [headless])

    def test_clustered_optimum_is_valid_and_dominates(self):
        clustering = two_phase_cluster(TWO_GROUPS)
        best = clustered_optimum(TWO_GROUPS, clustering)
        assert validate_routes(TWO_GROUPS, best).ok
        # Optimal within the clustering: trying every per-cluster order by
        # brute force cannot beat it.
        for cluster in clustering.clusters:
            sub = cluster_to_tsp(TWO_GROUPS, cluster)
            orders = itertools.permutations(cluster)
            best_cycle = min(build_tour(sub, (1, *o)).length for o in orders)
            assert any(abs(best_cycle - t) < 1e-9 for t in _route_lengths(best, TWO_GROUPS))


def _route_lengths(solution, instance):
    from metasolve.classical.vrp import route_cycle_length

    return [route_cycle_length(instance, r) for r in solution.routes]
