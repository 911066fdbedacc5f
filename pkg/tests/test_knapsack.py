from __future__ import annotations

import itertools
import random

from metasolve.classical import knapsack_branch_bound, knapsack_dp
from metasolve.formats import KnapsackInstance, KnapsackItem


def _brute_force_value(instance: KnapsackInstance) -> float:
    best = 0.0
    for r in range(len(instance.items) + 1):
        for combo in itertools.combinations(instance.items, r):
            if sum(i.weight for i in combo) <= instance.capacity:
                best = max(best, sum(i.value for i in combo))
    return best


def _random_instance(rng: random.Random) -> KnapsackInstance:
    # Values are quarter-integers so sums are exact in float arithmetic and
    # the solver comparisons can use plain equality.
    n = rng.randint(0, 15)
    items = tuple(
        KnapsackItem(item_id=i + 1, weight=rng.randint(0, 12), value=rng.randint(0, 80) / 4)
        for i in range(n)
    )
    return KnapsackInstance(items=items, capacity=rng.randint(0, 30))


THREE_ITEMS = KnapsackInstance(
    items=(KnapsackItem(1, 2, 3.0), KnapsackItem(2, 3, 4.0), KnapsackItem(3, 4, 5.0)),
    capacity=5,
)


def test_three_item_instance_against_subset_enumeration():
    # Brute force over all 8 subsets: {1,2} fits at weight 5 with value 7.
    assert _brute_force_value(THREE_ITEMS) == 7.0
    solution = knapsack_dp(THREE_ITEMS)
    assert solution.value == 7.0
    assert solution.chosen == (1, 2)
    assert solution.weight == 5


def test_no_items():
    solution = knapsack_dp(KnapsackInstance(items=(), capacity=10))
    assert solution.value == 0.0
    assert solution.chosen == ()


def test_single_item_heavier_than_capacity():
    instance = KnapsackInstance(items=(KnapsackItem(1, 10, 100.0),), capacity=5)
    assert knapsack_dp(instance).chosen == ()
    assert knapsack_branch_bound(instance).chosen == ()


def test_zero_capacity_takes_only_weightless_items():
    instance = KnapsackInstance(
        items=(KnapsackItem(1, 0, 2.0), KnapsackItem(2, 1, 9.0)), capacity=0
    )
    assert knapsack_dp(instance).value == 2.0
    assert knapsack_branch_bound(instance).value == 2.0


def test_lexicographic_tie_break():
    # Any two of the four identical items are optimal; DP must pick {1, 2}.
    instance = KnapsackInstance(
        items=(
            KnapsackItem(1, 2, 5.0),
            KnapsackItem(2, 2, 5.0),
            KnapsackItem(3, 2, 5.0),
            KnapsackItem(4, 2, 5.0),
        ),
        capacity=4,
    )
    assert knapsack_dp(instance).chosen == (1, 2)


def test_worthless_items_left_out():
    instance = KnapsackInstance(
        items=(KnapsackItem(1, 1, 4.0), KnapsackItem(2, 1, 0.0)), capacity=5
    )
    assert knapsack_dp(instance).chosen == (1,)


def test_dp_matches_brute_force_on_random_instances():
    rng = random.Random(101)
    for _ in range(150):
        instance = _random_instance(rng)
        assert knapsack_dp(instance).value == _brute_force_value(instance)


def test_branch_bound_matches_dp_value():
    rng = random.Random(202)
    for _ in range(300):
        instance = _random_instance(rng)
        dp = knapsack_dp(instance)
        bb = knapsack_branch_bound(instance)
        assert bb.value == dp.value
        assert bb.weight <= instance.capacity


def test_chosen_set_recomputes_to_reported_value():
    rng = random.Random(303)
    for _ in range(100):
        instance = _random_instance(rng)
        by_id = {i.item_id: i for i in instance.items}
        for solver in (knapsack_dp, knapsack_branch_bound):
            solution = solver(instance)
            assert sum(by_id[c].weight for c in solution.chosen) == solution.weight
            assert solution.weight <= instance.capacity
            assert abs(sum(by_id[c].value for c in solution.chosen) - solution.value) < 1e-9
