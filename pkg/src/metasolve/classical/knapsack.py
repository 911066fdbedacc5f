"""0/1 knapsack solvers: exact dynamic program and branch-and-bound.

Both maximize total value under an integer weight capacity. The DP breaks
value ties toward the lexicographically smallest chosen-id set; branch-and-
bound guarantees the same optimal value but may pick a different set.
"""

from __future__ import annotations

from dataclasses import dataclass

from metasolve.formats.knapsack import KnapsackInstance, KnapsackItem


@dataclass(frozen=True)
class KnapsackSolution:
    chosen: tuple[int, ...]
    value: float
    weight: int


def knapsack_dp(instance: KnapsackInstance) -> KnapsackSolution:
    """Exact DP over capacity, O(n * capacity)."""
    items = sorted(instance.items, key=lambda it: it.item_id)
    n = len(items)
    cap = instance.capacity
    # best[k][w] = max value using items k.. with remaining capacity w
    best = [[0.0] * (cap + 1) for _ in range(n + 1)]
    for k in range(n - 1, -1, -1):
        item = items[k]
        row, below = best[k], best[k + 1]
        for w in range(cap + 1):
            value = below[w]
            if item.weight <= w:
                taking = item.value + below[w - item.weight]
                if taking > value:
                    value = taking
            row[w] = value
    # Walk forward, taking an item whenever it is consistent with the optimal
    # value; this yields the lexicographically smallest chosen-id set. Stop
    # as soon as the remaining target value is zero so worthless items are
    # not dragged in.
    chosen: list[int] = []
    weight = 0
    w = cap
    target = best[0][cap]
    for k in range(n):
        if target == 0.0:
            break
        item = items[k]
        if item.weight <= w:
            rest = best[k + 1][w - item.weight]
            if item.value + rest == target:
                chosen.append(item.item_id)
                weight += item.weight
                w -= item.weight
                target = rest
    return KnapsackSolution(chosen=tuple(chosen), value=best[0][cap], weight=weight)


def knapsack_branch_bound(instance: KnapsackInstance) -> KnapsackSolution:
    """Depth-first branch-and-bound with the fractional (greedy) upper bound."""
    items = [it for it in instance.items]
    items.sort(key=_ratio_key)
    n = len(items)
    cap = instance.capacity

    def bound(k: int, w: int, value: float) -> float:
        # Fractional relaxation over the remaining ratio-sorted items.
        room = cap - w
        total = value
        for idx in range(k, n):
            item = items[idx]
            if item.value <= 0:
                break
            if item.weight == 0 or item.weight <= room:
                total += item.value
                room -= item.weight
            else:
                total += item.value * (room / item.weight)
                break
        return total

    best_value = 0.0
    best_set: tuple[int, ...] = ()
    best_weight = 0
    stack: list[tuple[int, int, float, tuple[int, ...]]] = [(0, 0, 0.0, ())]
    while stack:
        k, w, value, taken = stack.pop()
        if value > best_value:
            best_value, best_set, best_weight = value, taken, w
        if k >= n or bound(k, w, value) <= best_value:
            continue
        item = items[k]
        # Explore "take" after "skip" is pushed so taking is expanded first.
        stack.append((k + 1, w, value, taken))
        if item.weight <= cap - w:
            stack.append((k + 1, w + item.weight, value + item.value, taken + (item.item_id,)))
    return KnapsackSolution(chosen=tuple(sorted(best_set)), value=best_value, weight=best_weight)


def _ratio_key(item: KnapsackItem):
    # Nonpositive values go last so the fractional bound can stop at them.
    if item.value <= 0:
        return (2, 0.0, item.item_id)
    if item.weight == 0:
        return (0, -item.value, item.item_id)
    return (1, -(item.value / item.weight), item.item_id)
