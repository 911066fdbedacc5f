"""Cluster-first decomposition of VRP into per-cluster TSP subproblems."""

from metasolve.decomposition.clustering import (
    Clustering,
    kmeans_cluster,
    two_phase_cluster,
)
from metasolve.decomposition.composition import (
    cluster_to_tsp,
    clustered_optimum,
    compose_routes,
)

__all__ = [
    "Clustering",
    "two_phase_cluster",
    "kmeans_cluster",
    "cluster_to_tsp",
    "compose_routes",
    "clustered_optimum",
]
