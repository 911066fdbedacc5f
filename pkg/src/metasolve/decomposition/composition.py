"""Gluing per-cluster tours back into a full vehicle-routing solution."""

from __future__ import annotations

from metasolve.classical.tsp import Tour, tsp_held_karp
from metasolve.decomposition.clustering import Clustering
from metasolve.errors import CompositionError
from metasolve.formats.instances import TspInstance, VrpInstance
from metasolve.formats.solutions import RouteSolution


def cluster_to_tsp(instance: VrpInstance, cluster) -> TspInstance:
    """TSP instance over the depot plus one cluster; ids and coordinates kept."""
    members = sorted(set(cluster))
    if instance.depot in members:
        raise CompositionError("cluster must not contain the depot")
    nodes = tuple(instance.node(n) for n in (instance.depot, *members))
    label = "-".join(str(m) for m in members)
    return TspInstance(name=f"{instance.name}-c{label}", nodes=nodes)


def compose_routes(instance: VrpInstance, tours) -> RouteSolution:
    """Rotate each tour to start at the depot and stack them into routes.

    Total length is the sum of the cyclic tour lengths. Raises
    CompositionError if a tour misses the depot or customers overlap.
    """
    routes: list[tuple[int, ...]] = []
    seen: set[int] = set()
    total = 0.0
    for tour in tours:
        order = list(tour.order)
        if instance.depot not in order:
            raise CompositionError("tour does not visit the depot")
        idx = order.index(instance.depot)
        route = tuple(order[idx + 1 :] + order[:idx])
        overlap = seen.intersection(route)
        if overlap:
            raise CompositionError(f"customers {sorted(overlap)} appear in more than one tour")
        seen.update(route)
        routes.append(route)
        total += tour.length
    return RouteSolution(routes=tuple(routes), total_length=total)


def clustered_optimum(instance: VrpInstance, clustering: Clustering) -> RouteSolution:
    """Best possible solution under a fixed clustering: exact TSP per cluster."""
    tours: list[Tour] = []
    for cluster in clustering.clusters:
        tours.append(tsp_held_karp(cluster_to_tsp(instance, cluster)))
    return compose_routes(instance, tours)
