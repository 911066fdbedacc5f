"""Knapsack list format.

Instance::

    CAPACITY <int>
    ITEM <id> <weight> <value>   (one per item)

Solution::

    ITEMS <id> <id> ...
    VALUE <real>
    WEIGHT <int>

Weights are integers, values are reals, ``#`` starts a comment.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from metasolve.errors import ParseError


@dataclass(frozen=True)
class KnapsackItem:
    item_id: int
    weight: int
    value: float


@dataclass(frozen=True)
class KnapsackInstance:
    items: tuple[KnapsackItem, ...]
    capacity: int

    def __post_init__(self) -> None:
        if self.capacity < 0:
            raise ValueError("capacity must be nonnegative")
        ids = {item.item_id for item in self.items}
        if len(ids) != len(self.items):
            raise ValueError("duplicate item ids")
        if any(item.weight < 0 for item in self.items):
            raise ValueError("negative weight")


def parse_knapsack(text: str) -> KnapsackInstance:
    capacity: int | None = None
    items: list[KnapsackItem] = []
    seen: set[int] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "CAPACITY":
            if capacity is not None:
                raise ParseError(lineno, "duplicate CAPACITY line")
            if len(parts) != 2:
                raise ParseError(lineno, "expected 'CAPACITY <int>'")
            capacity = _int(lineno, parts[1], "capacity")
            if capacity < 0:
                raise ParseError(lineno, "capacity must be nonnegative")
        elif parts[0] == "ITEM":
            if capacity is None:
                raise ParseError(lineno, "CAPACITY must come before items")
            if len(parts) != 4:
                raise ParseError(lineno, "expected 'ITEM <id> <weight> <value>'")
            item_id = _int(lineno, parts[1], "item id")
            if item_id in seen:
                raise ParseError(lineno, f"duplicate item id {item_id}")
            seen.add(item_id)
            weight = _int(lineno, parts[2], "weight")
            if weight < 0:
                raise ParseError(lineno, "weight must be nonnegative")
            value = _float(lineno, parts[3], "value")
            items.append(KnapsackItem(item_id, weight, value))
        else:
            raise ParseError(lineno, f"unexpected line {line!r}")
    if capacity is None:
        raise ParseError(1, "missing CAPACITY line")
    return KnapsackInstance(items=tuple(items), capacity=capacity)


def serialize_knapsack(instance: KnapsackInstance) -> str:
    lines = [f"CAPACITY {instance.capacity}"]
    lines += [f"ITEM {i.item_id} {i.weight} {i.value!r}" for i in instance.items]
    return "\n".join(lines) + "\n"


def serialize_knapsack_solution(item_ids, value: float, weight: int) -> str:
    ids = " ".join(str(i) for i in item_ids)
    head = f"ITEMS {ids}".rstrip()
    return f"{head}\nVALUE {value!r}\nWEIGHT {weight}\n"


def parse_knapsack_solution(text: str) -> tuple[tuple[int, ...], float, int]:
    item_ids: tuple[int, ...] | None = None
    value: float | None = None
    weight: int | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "ITEMS":
            if item_ids is not None:
                raise ParseError(lineno, "duplicate ITEMS line")
            item_ids = tuple(_int(lineno, p, "item id") for p in parts[1:])
        elif parts[0] == "VALUE" and len(parts) == 2:
            value = _float(lineno, parts[1], "value")
        elif parts[0] == "WEIGHT" and len(parts) == 2:
            weight = _int(lineno, parts[1], "weight")
        else:
            raise ParseError(lineno, f"unexpected line {line!r}")
    if item_ids is None or value is None or weight is None:
        raise ParseError(1, "solution needs ITEMS, VALUE and WEIGHT lines")
    return item_ids, value, weight


def _int(lineno: int, token: str, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(lineno, f"{what} must be an integer, got {token!r}") from None


def _float(lineno: int, token: str, what: str) -> float:
    try:
        parsed = float(token)
    except ValueError:
        raise ParseError(lineno, f"{what} must be a number, got {token!r}") from None
    if not math.isfinite(parsed):
        raise ParseError(lineno, f"{what} must be finite")
    return parsed
