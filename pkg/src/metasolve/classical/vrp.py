"""Capacitated VRP solvers and route validation.

vrp_savings is a parallel Clarke-Wright construction with per-route 2-opt
polish. vrp_brute_force enumerates customer partitions (8 customers at most)
and solves each group exactly, serving as the optimality oracle.
"""

from __future__ import annotations

from dataclasses import dataclass

from metasolve.classical.tsp import build_tour, tsp_held_karp, tsp_two_opt
from metasolve.errors import Infeasible, TooLarge
from metasolve.formats.instances import TspInstance, VrpInstance, distance
from metasolve.formats.solutions import RouteSolution

BRUTE_FORCE_LIMIT = 8


@dataclass(frozen=True)
class Violation:
    kind: str
    detail: str


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations


def route_cycle_length(instance: VrpInstance, route) -> float:
    """Length of depot -> route... -> depot, summed left to right."""
    length = 0.0
    here = instance.depot
    for node in route:
        length += distance(instance, here, node)
        here = node
    length += distance(instance, here, instance.depot)
    return length


def _sub_tsp(instance: VrpInstance, customers) -> TspInstance:
    nodes = tuple(instance.node(n) for n in (instance.depot, *customers))
    return TspInstance(name=f"{instance.name}-part", nodes=nodes)


def _rotate_to_depot(order, depot: int) -> tuple[int, ...]:
    idx = order.index(depot)
    rotated = order[idx:] + order[:idx]
    return tuple(rotated[1:])


def _check_feasible(instance: VrpInstance) -> None:
    total = sum(instance.demand[c] for c in instance.customers)
    if any(instance.demand[c] > instance.capacity for c in instance.customers):
        raise Infeasible("a customer demand exceeds vehicle capacity")
    if instance.max_vehicles is not None and total > instance.max_vehicles * instance.capacity:
        raise Infeasible("total demand exceeds fleet capacity")


def vrp_savings(instance: VrpInstance) -> RouteSolution:
    """Clarke-Wright parallel savings, then 2-opt on each route.

    Deterministic: savings ties break on the customer id pair. If the merge
    phase leaves more routes than the fleet allows, the cheapest feasible
    merges are forced; Infeasible if none exists.
    """
    _check_feasible(instance)
    customers = sorted(instance.customers)
    depot = instance.depot
    routes: dict[int, list[int]] = {i: [c] for i, c in enumerate(customers)}
    loads: dict[int, int] = {i: instance.demand[c] for i, c in enumerate(customers)}
    route_of: dict[int, int] = {c: i for i, c in enumerate(customers)}

    savings = []
    for ai, a in enumerate(customers):
        for b in customers[ai + 1 :]:
            s = distance(instance, depot, a) + distance(instance, depot, b) - distance(instance, a, b)
            savings.append((s, a, b))
    savings.sort(key=lambda t: (-t[0], t[1], t[2]))

    for s, a, b in savings:
        if s < 0:
            break
        ra, rb = route_of[a], route_of[b]
        if ra == rb or loads[ra] + loads[rb] > instance.capacity:
            continue
        route_a, route_b = routes[ra], routes[rb]
        # Merge only at route ends, reversing a route when needed.
        if route_a[-1] != a:
            if route_a[0] != a:
                continue
            route_a.reverse()
        if route_b[0] != b:
            if route_b[-1] != b:
                continue
            route_b.reverse()
        route_a.extend(route_b)
        loads[ra] += loads[rb]
        for c in route_b:
            route_of[c] = ra
        del routes[rb], loads[rb]

    if instance.max_vehicles is not None:
        while len(routes) > instance.max_vehicles:
            merge = _cheapest_merge(instance, routes, loads)
            if merge is None:
                raise Infeasible("cannot reach the vehicle limit under capacity")
            ra, rb, reverse_a, reverse_b = merge
            if reverse_a:
                routes[ra].reverse()
            if reverse_b:
                routes[rb].reverse()
            routes[ra].extend(routes[rb])
            loads[ra] += loads[rb]
            del routes[rb], loads[rb]

    final: list[tuple[int, ...]] = []
    total = 0.0
    for key in sorted(routes):
        route = routes[key]
        if len(route) >= 3:
            sub = _sub_tsp(instance, route)
            tour = tsp_two_opt(sub, build_tour(sub, [depot, *route]), seed=0)
            route = list(_rotate_to_depot(list(tour.order), depot))
        final.append(tuple(route))
        total += route_cycle_length(instance, route)
    return RouteSolution(routes=tuple(final), total_length=total)


def _cheapest_merge(instance: VrpInstance, routes, loads):
    depot = instance.depot
    best = None
    best_delta = None
    keys = sorted(routes)
    for ra in keys:
        for rb in keys:
            if ra >= rb or loads[ra] + loads[rb] > instance.capacity:
                continue
            for reverse_a in (False, True):
                for reverse_b in (False, True):
                    tail = routes[ra][0 if reverse_a else -1]
                    head = routes[rb][-1 if reverse_b else 0]
                    delta = (
                        distance(instance, tail, head)
                        - distance(instance, tail, depot)
                        - distance(instance, depot, head)
                    )
                    if best_delta is None or delta < best_delta:
                        best_delta = delta
                        best = (ra, rb, reverse_a, reverse_b)
    return best


def vrp_brute_force(instance: VrpInstance) -> RouteSolution:
    """Optimal routes by enumerating customer partitions; 8 customers max."""
    customers = sorted(instance.customers)
    if len(customers) > BRUTE_FORCE_LIMIT:
        raise TooLarge(f"{len(customers)} customers exceeds the brute-force limit of {BRUTE_FORCE_LIMIT}")
    _check_feasible(instance)
    limit = instance.max_vehicles if instance.max_vehicles is not None else len(customers)

    tour_cache: dict[frozenset[int], tuple[float, tuple[int, ...]]] = {}

    def group_tour(group: tuple[int, ...]) -> tuple[float, tuple[int, ...]]:
        key = frozenset(group)
        hit = tour_cache.get(key)
        if hit is None:
            tour = tsp_held_karp(_sub_tsp(instance, group))
            hit = (tour.length, _rotate_to_depot(list(tour.order), instance.depot))
            tour_cache[key] = hit
        return hit

    best_length: float | None = None
    best_routes: tuple[tuple[int, ...], ...] = ()
    groups: list[list[int]] = []
    group_loads: list[int] = []

    def recurse(idx: int) -> None:
        nonlocal best_length, best_routes
        if idx == len(customers):
            length = 0.0
            ordered = []
            for group in groups:
                group_length, order = group_tour(tuple(group))
                length += group_length
                ordered.append(order)
            if best_length is None or length < best_length:
                best_length = length
                best_routes = tuple(ordered)
            return
        customer = customers[idx]
        demand = instance.demand[customer]
        for g in range(len(groups)):
            if group_loads[g] + demand <= instance.capacity:
                groups[g].append(customer)
                group_loads[g] += demand
                recurse(idx + 1)
                groups[g].pop()
                group_loads[g] -= demand
        if len(groups) < limit:
            groups.append([customer])
            group_loads.append(demand)
            recurse(idx + 1)
            groups.pop()
            group_loads.pop()

    recurse(0)
    if best_length is None:
        raise Infeasible("no capacity-feasible partition fits the fleet")
    total = sum(route_cycle_length(instance, r) for r in best_routes)
    return RouteSolution(routes=best_routes, total_length=total)


def validate_routes(instance: VrpInstance, candidate: RouteSolution) -> ValidationReport:
    """Check a candidate without raising; every problem becomes a violation."""
    violations: list[Violation] = []
    known = set(instance.node_ids)
    expected = set(instance.customers)
    seen: dict[int, int] = {}
    resolvable = True
    for idx, route in enumerate(candidate.routes):
        if not route:
            violations.append(Violation("empty_route", f"route {idx} has no customers"))
        load = 0
        for node in route:
            if node not in known:
                violations.append(Violation("unknown_node", f"route {idx} visits unknown node {node}"))
                resolvable = False
                continue
            if node == instance.depot:
                violations.append(Violation("depot_in_route", f"route {idx} contains the depot"))
                continue
            seen[node] = seen.get(node, 0) + 1
            load += instance.demand[node]
        if load > instance.capacity:
            violations.append(
                Violation("capacity_exceeded", f"route {idx} load {load} exceeds capacity {instance.capacity}")
            )
    for customer in sorted(expected - set(seen)):
        violations.append(Violation("missing_customer", f"customer {customer} is not visited"))
    for customer in sorted(c for c, count in seen.items() if count > 1):
        violations.append(Violation("duplicated_customer", f"customer {customer} visited {seen[customer]} times"))
    if instance.max_vehicles is not None and len(candidate.routes) > instance.max_vehicles:
        violations.append(
            Violation(
                "vehicle_count_exceeded",
                f"{len(candidate.routes)} routes exceed the fleet of {instance.max_vehicles}",
            )
        )
    if resolvable:
        recomputed = sum(
            route_cycle_length(instance, [n for n in route if n != instance.depot])
            for route in candidate.routes
        )
        tolerance = 1e-9 * max(1.0, abs(recomputed))
        if abs(recomputed - candidate.total_length) > tolerance:
            violations.append(
                Violation(
                    "length_mismatch",
                    f"stated length {candidate.total_length!r} differs from recomputed {recomputed!r}",
                )
            )
    return ValidationReport(violations=tuple(violations))
