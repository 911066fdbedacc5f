"""Route solution text.

One route per line as space-separated node ids, then a final
``LENGTH <real>`` line. For vehicle routes the depot is excluded from the
route lines; a plain tour is written as a single line containing every node.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from metasolve.errors import ParseError


@dataclass(frozen=True)
class RouteSolution:
    routes: tuple[tuple[int, ...], ...]
    total_length: float

    def __post_init__(self) -> None:
        if not math.isfinite(self.total_length):
            raise ValueError("total length must be finite")


def serialize_routes(solution: RouteSolution) -> str:
    lines = [" ".join(str(n) for n in route) for route in solution.routes]
    lines.append(f"LENGTH {solution.total_length!r}")
    return "\n".join(lines) + "\n"


def parse_routes(text: str) -> RouteSolution:
    routes: list[tuple[int, ...]] = []
    length: float | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if length is not None:
            raise ParseError(lineno, "content after LENGTH line")
        parts = line.split()
        if parts[0] == "LENGTH":
            if len(parts) != 2:
                raise ParseError(lineno, "expected 'LENGTH <real>'")
            try:
                length = float(parts[1])
            except ValueError:
                raise ParseError(lineno, f"length must be a number, got {parts[1]!r}") from None
            if not math.isfinite(length):
                raise ParseError(lineno, "length must be finite")
            continue
        try:
            route = tuple(int(p) for p in parts)
        except ValueError:
            raise ParseError(lineno, f"route ids must be integers, got {line!r}") from None
        routes.append(route)
    if length is None:
        raise ParseError(1, "missing LENGTH line")
    return RouteSolution(routes=tuple(routes), total_length=length)
