"""TSP to QUBO encoding and decoding.

One-hot position encoding: variable v*n + p is 1 when the city in slot v
(ascending node id) sits at tour position p. Row and column one-hot
constraints are penalized quadratically with strength penalty_a; the
directed-step terms carry the edge weights scaled by weight_b. The
constant part of the expansion lands in the Qubo offset.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from metasolve.classical.tsp import Tour, build_tour
from metasolve.errors import DimensionMismatch, TooLarge
from metasolve.formats.instances import TspInstance, distance
from metasolve.formats.qubo import Qubo, energy

EXHAUSTIVE_LIMIT = 24
_CHUNK = 1 << 16


@dataclass(frozen=True)
class InvalidAssignment:
    """A bitstring that is not a permutation matrix; no repair attempted."""

    violations: tuple[str, ...]


@dataclass(frozen=True)
class TspQuboEncoding:
    qubo: Qubo
    n: int
    penalty_a: float
    weight_b: float
    city_order: tuple[int, ...]
    instance: TspInstance

    def var_index(self, city_slot: int, position: int) -> int:
        return city_slot * self.n + position


def encode_tsp(
    instance: TspInstance, weight_b: float = 1.0, penalty_a: float | None = None
) -> TspQuboEncoding:
    """Expand the one-hot tour Hamiltonian into upper-triangular coefficients.

    The default penalty_a = weight_b * n * w_max + 1 is the smallest
    integer-margin value that keeps every constraint-violating assignment
    strictly above every valid tour: a single violation costs at least
    penalty_a while a full tour costs at most weight_b * n * w_max.
    """
    ids = tuple(sorted(instance.node_ids))
    n = len(ids)
    if n < 2:
        raise ValueError("encoding needs at least 2 nodes")
    w_max = max(
        distance(instance, a, b) for i, a in enumerate(ids) for b in ids[i + 1 :]
    )
    if penalty_a is None:
        penalty_a = weight_b * (n * w_max) + 1.0
    coeffs: dict[tuple[int, int], float] = {}

    def add(i: int, j: int, value: float) -> None:
        key = (i, j) if i <= j else (j, i)
        coeffs[key] = coeffs.get(key, 0.0) + value

    def var(v: int, p: int) -> int:
        return v * n + p

    # (1 - sum x)^2 expands to a -1 diagonal and +2 on same-row / same-column
    # pairs, plus a constant 1 per constraint; x^2 == x folds the square terms
    # into the diagonal.
    for p in range(n):
        for v in range(n):
            add(var(v, p), var(v, p), -penalty_a)
            for u in range(v):
                add(var(u, p), var(v, p), 2.0 * penalty_a)
    for v in range(n):
        for p in range(n):
            add(var(v, p), var(v, p), -penalty_a)
            for q in range(p):
                add(var(v, q), var(v, p), 2.0 * penalty_a)
    for u in range(n):
        for v in range(n):
            if u == v:
                continue
            w = distance(instance, ids[u], ids[v])
            for p in range(n):
                add(var(u, p), var(v, (p + 1) % n), weight_b * w)

    qubo = Qubo(
        n=n * n,
        coefficients={k: c for k, c in coeffs.items() if c != 0.0},
        offset=2.0 * penalty_a * n,
    )
    return TspQuboEncoding(
        qubo=qubo,
        n=n,
        penalty_a=penalty_a,
        weight_b=weight_b,
        city_order=ids,
        instance=instance,
    )


def decode_bitstring(encoding: TspQuboEncoding, x) -> Tour | InvalidAssignment:
    """Read a permutation matrix back into a Tour, or report the violations."""
    n = encoding.n
    if len(x) != n * n:
        raise DimensionMismatch(f"expected {n * n} bits, got {len(x)}")
    violations: list[str] = []
    order: list[int] = []
    for p in range(n):
        cities = [v for v in range(n) if x[encoding.var_index(v, p)]]
        if len(cities) != 1:
            violations.append(f"position {p} holds {len(cities)} cities")
        else:
            order.append(encoding.city_order[cities[0]])
    for v in range(n):
        positions = sum(1 for p in range(n) if x[encoding.var_index(v, p)])
        if positions != 1:
            violations.append(
                f"city {encoding.city_order[v]} appears in {positions} positions"
            )
    if violations:
        return InvalidAssignment(violations=tuple(violations))
    return build_tour(encoding.instance, order)


def to_dense(qubo: Qubo) -> np.ndarray:
    """Upper-triangular coefficient matrix, offset not included."""
    dense = np.zeros((qubo.n, qubo.n))
    for (i, j), coeff in qubo.coefficients.items():
        dense[i, j] = coeff
    return dense


def all_energies(qubo: Qubo) -> np.ndarray:
    """Energies of all 2^n assignments, indexed by state integer.

    Bit i of the state integer is variable i (LSB = variable 0), the same
    convention the samplers and the exhaustive oracle use.
    """
    if qubo.n > EXHAUSTIVE_LIMIT:
        raise TooLarge(f"{qubo.n} variables exceeds the exhaustive limit")
    dense = to_dense(qubo)
    total = 1 << qubo.n
    out = np.empty(total)
    shifts = np.arange(qubo.n, dtype=np.uint32)
    for start in range(0, total, _CHUNK):
        states = np.arange(start, min(start + _CHUNK, total), dtype=np.uint32)
        bits = ((states[:, None] >> shifts) & 1).astype(np.float64)
        out[start : start + len(states)] = ((bits @ dense) * bits).sum(axis=1)
    return out + qubo.offset


def exhaustive_qubo_min(qubo: Qubo) -> tuple[tuple[int, ...], float]:
    """Global minimum by enumeration; ties go to the smallest state integer."""
    if qubo.n > EXHAUSTIVE_LIMIT:
        raise TooLarge(f"{qubo.n} variables exceeds the exhaustive limit")
    dense = to_dense(qubo)
    total = 1 << qubo.n
    shifts = np.arange(qubo.n, dtype=np.uint32)
    best_energy = float("inf")
    best_state = 0
    for start in range(0, total, _CHUNK):
        states = np.arange(start, min(start + _CHUNK, total), dtype=np.uint32)
        bits = ((states[:, None] >> shifts) & 1).astype(np.float64)
        energies = ((bits @ dense) * bits).sum(axis=1)
        # argmin keeps the first occurrence, i.e. the smallest state integer
        idx = int(np.argmin(energies))
        if energies[idx] < best_energy:
            best_energy = float(energies[idx])
            best_state = int(states[idx])
    bits_out = tuple((best_state >> i) & 1 for i in range(qubo.n))
    return bits_out, best_energy + qubo.offset


__all__ = [
    "EXHAUSTIVE_LIMIT",
    "InvalidAssignment",
    "TspQuboEncoding",
    "all_energies",
    "decode_bitstring",
    "encode_tsp",
    "energy",
    "exhaustive_qubo_min",
    "to_dense",
]
