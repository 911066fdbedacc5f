"""Sparse QUBO text format.

Grammar (line-oriented, ``#`` starts a comment)::

    n <vars>
    c <offset>            (optional, default 0)
    <i> <j> <coefficient> (0-based, i <= j)

Coefficients are stored upper-triangular; an entry with j < i raises
LowerTriangleEntry. Absent entries are zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from metasolve.errors import DimensionMismatch, LowerTriangleEntry, ParseError


@dataclass(frozen=True)
class Qubo:
    n: int
    coefficients: dict[tuple[int, int], float] = field(default_factory=dict)
    offset: float = 0.0

    def __post_init__(self) -> None:
        if self.n <= 0:
            raise ValueError("variable count must be positive")
        for (i, j) in self.coefficients:
            if not (0 <= i <= j < self.n):
                raise ValueError(f"coefficient index ({i}, {j}) out of range for n={self.n}")


def energy(qubo: Qubo, x) -> float:
    """Evaluate offset + sum of Q[i,j] * x_i * x_j over stored entries."""
    if len(x) != qubo.n:
        raise DimensionMismatch(f"expected {qubo.n} bits, got {len(x)}")
    total = qubo.offset
    for (i, j), coeff in qubo.coefficients.items():
        if x[i] and x[j]:
            total += coeff
    return total


def parse_qubo(text: str) -> Qubo:
    """Parse the sparse coefficient format. Raises ParseError on bad input."""
    n: int | None = None
    offset = 0.0
    seen_offset = False
    coefficients: dict[tuple[int, int], float] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "n":
            if n is not None:
                raise ParseError(lineno, "duplicate n line")
            if len(parts) != 2:
                raise ParseError(lineno, "expected 'n <vars>'")
            n = _int(lineno, parts[1], "variable count")
            if n <= 0:
                raise ParseError(lineno, "variable count must be positive")
            continue
        if n is None:
            raise ParseError(lineno, "first entry must be the 'n <vars>' line")
        if parts[0] == "c":
            if seen_offset or coefficients:
                raise ParseError(lineno, "offset line must come directly after the n line")
            if len(parts) != 2:
                raise ParseError(lineno, "expected 'c <offset>'")
            offset = _float(lineno, parts[1], "offset")
            seen_offset = True
            continue
        if len(parts) != 3:
            raise ParseError(lineno, "expected '<i> <j> <coefficient>'")
        i = _int(lineno, parts[0], "row index")
        j = _int(lineno, parts[1], "column index")
        if j < i:
            raise LowerTriangleEntry(lineno, f"entry ({i}, {j}) is below the diagonal")
        if not (0 <= i and j < n):
            raise ParseError(lineno, f"index ({i}, {j}) out of range for n={n}")
        if (i, j) in coefficients:
            raise ParseError(lineno, f"duplicate coefficient ({i}, {j})")
        value = _float(lineno, parts[2], "coefficient")
        if value != 0.0:
            coefficients[(i, j)] = value
    if n is None:
        raise ParseError(1, "missing 'n <vars>' line")
    return Qubo(n=n, coefficients=coefficients, offset=offset)


def serialize_qubo(qubo: Qubo) -> str:
    """Serialize with sorted entries; zero coefficients are dropped."""
    lines = [f"n {qubo.n}"]
    if qubo.offset != 0.0:
        lines.append(f"c {qubo.offset!r}")
    for (i, j) in sorted(qubo.coefficients):
        value = qubo.coefficients[(i, j)]
        if value != 0.0:
            lines.append(f"{i} {j} {value!r}")
    return "\n".join(lines) + "\n"


def _int(lineno: int, token: str, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(lineno, f"{what} must be an integer, got {token!r}") from None


def _float(lineno: int, token: str, what: str) -> float:
    try:
        value = float(token)
    except ValueError:
        raise ParseError(lineno, f"{what} must be a number, got {token!r}") from None
    if not math.isfinite(value):
        raise ParseError(lineno, f"{what} must be finite")
    return value


# --- assignment solution text ----------------------------------------------


def serialize_bitstring_solution(bits: str, energy_value: float) -> str:
    return f"BITSTRING {bits}\nENERGY {energy_value!r}\n"


def parse_bitstring_solution(text: str) -> tuple[str, float]:
    bits: str | None = None
    energy_value: float | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "BITSTRING" and len(parts) == 2:
            if bits is not None:
                raise ParseError(lineno, "duplicate BITSTRING line")
            if set(parts[1]) - {"0", "1"}:
                raise ParseError(lineno, "bitstring must be 0/1 characters")
            bits = parts[1]
        elif parts[0] == "ENERGY" and len(parts) == 2:
            if energy_value is not None:
                raise ParseError(lineno, "duplicate ENERGY line")
            energy_value = _float(lineno, parts[1], "energy")
        else:
            raise ParseError(lineno, f"unexpected line {line!r}")
    if bits is None or energy_value is None:
        raise ParseError(1, "solution needs BITSTRING and ENERGY lines")
    return bits, energy_value
