"""TSP solvers: nearest-neighbor construction, 2-opt improvement, and an
exact Held-Karp dynamic program for small instances."""

from __future__ import annotations

import random
from dataclasses import dataclass

from metasolve.errors import TooLarge, UnknownNode
from metasolve.formats.instances import TspInstance, distance

HELD_KARP_LIMIT = 20


@dataclass(frozen=True)
class Tour:
    order: tuple[int, ...]
    length: float


def build_tour(instance: TspInstance, order) -> Tour:
    """Canonicalize a cyclic visiting order and compute its length.

    The cycle is rotated to start at the smallest node id and oriented so
    the second node id is smaller than the last. Length is the left-to-right
    sum over the canonical order, which makes equal cycles produce
    bit-identical lengths.
    """
    order = list(order)
    ids = set(instance.node_ids)
    if set(order) != ids or len(order) != len(ids):
        raise ValueError("order must visit every node exactly once")
    start = order.index(min(order))
    order = order[start:] + order[:start]
    if len(order) > 2 and order[1] > order[-1]:
        order = [order[0]] + order[:0:-1]
    length = 0.0
    for i, a in enumerate(order):
        b = order[(i + 1) % len(order)]
        length += distance(instance, a, b)
    return Tour(order=tuple(order), length=length)


def tsp_nearest_neighbor(instance: TspInstance, start_node: int) -> Tour:
    """Greedy construction; distance ties pick the smallest node id."""
    if start_node not in instance._by_id:
        raise UnknownNode(f"start node {start_node} not in instance")
    unvisited = set(instance.node_ids)
    unvisited.remove(start_node)
    order = [start_node]
    while unvisited:
        here = order[-1]
        best = min(unvisited, key=lambda n: (distance(instance, here, n), n))
        order.append(best)
        unvisited.remove(best)
    return build_tour(instance, order)


def tsp_two_opt(instance: TspInstance, initial: Tour, max_passes: int = 50, seed: int = 0) -> Tour:
    """First-improvement 2-opt with a seeded shuffle of the move order.

    Stops when a full pass finds no improving move or after max_passes.
    Never returns a tour longer than the initial one.
    """
    rng = random.Random(seed)
    order = list(initial.order)
    n = len(order)
    if n < 4:
        return build_tour(instance, order)
    moves = [(i, j) for i in range(n - 1) for j in range(i + 2, n) if not (i == 0 and j == n - 1)]
    for _ in range(max_passes):
        rng.shuffle(moves)
        improved = False
        for i, j in moves:
            a, b = order[i], order[i + 1]
            c, d = order[j], order[(j + 1) % n]
            delta = (
                distance(instance, a, c)
                + distance(instance, b, d)
                - distance(instance, a, b)
                - distance(instance, c, d)
            )
            if delta < -1e-12:
                order[i + 1 : j + 1] = reversed(order[i + 1 : j + 1])
                improved = True
        if not improved:
            break
    result = build_tour(instance, order)
    if result.length > initial.length:
        return build_tour(instance, initial.order)
    return result


def tsp_held_karp(instance: TspInstance) -> Tour:
    """Exact solution by bitmask dynamic programming, O(2^n * n^2).

    Hard limit of 20 nodes; cost ties prefer the smallest predecessor id.
    """
    ids = sorted(instance.node_ids)
    n = len(ids)
    if n > HELD_KARP_LIMIT:
        raise TooLarge(f"{n} nodes exceeds the Held-Karp limit of {HELD_KARP_LIMIT}")
    if n == 2:
        return build_tour(instance, ids)
    dist = [[distance(instance, a, b) for b in ids] for a in ids]
    # Node index 0 is the fixed start; masks range over the remaining n-1 nodes.
    m = n - 1
    size = 1 << m
    INF = float("inf")
    cost = [[INF] * m for _ in range(size)]
    parent = [[-1] * m for _ in range(size)]
    for k in range(m):
        cost[1 << k][k] = dist[0][k + 1]
    for mask in range(1, size):
        row = cost[mask]
        for last in range(m):
            base = row[last]
            if base == INF or not (mask >> last) & 1:
                continue
            d_last = dist[last + 1]
            for nxt in range(m):
                if (mask >> nxt) & 1:
                    continue
                new_mask = mask | (1 << nxt)
                candidate = base + d_last[nxt + 1]
                current = cost[new_mask][nxt]
                if candidate < current or (candidate == current and last < parent[new_mask][nxt]):
                    cost[new_mask][nxt] = candidate
                    parent[new_mask][nxt] = last
    full = size - 1
    best_last = -1
    best_cost = INF
    for last in range(m):
        candidate = cost[full][last] + dist[last + 1][0]
        if candidate < best_cost or (candidate == best_cost and last < best_last):
            best_cost = candidate
            best_last = last
    order_idx = []
    mask, last = full, best_last
    while last != -1:
        order_idx.append(last)
        mask, last = mask ^ (1 << last), parent[mask][last]
    order = [ids[0]] + [ids[k + 1] for k in reversed(order_idx)]
    return build_tour(instance, order)
