"""TSPLIB-inspired routing instance formats.

The accepted grammar is a strict subset of TSPLIB: EUC_2D coordinates only,
``KEY: value`` headers, one coordinate section, and for vehicle-routing
instances a demand section plus a depot section. Distances are exact
Euclidean reals; the classic TSPLIB nearest-integer rounding is deliberately
not applied.

TSP layout::

    NAME: <string>
    TYPE: TSP
    DIMENSION: <n>
    EDGE_WEIGHT_TYPE: EUC_2D
    NODE_COORD_SECTION
    <id> <x> <y>          (n lines)
    EOF

CVRP adds ``TYPE: CVRP``, ``CAPACITY:``, optional ``VEHICLES:``, a
DEMAND_SECTION and a DEPOT_SECTION between the coordinates and EOF.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from metasolve.errors import ParseError, UnknownNode


@dataclass(frozen=True)
class Node:
    node_id: int
    x: float
    y: float


@dataclass(frozen=True)
class TspInstance:
    name: str
    nodes: tuple[Node, ...]
    _by_id: dict[int, Node] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if len(self.nodes) < 2:
            raise ValueError("instance needs at least 2 nodes")
        by_id = {n.node_id: n for n in self.nodes}
        if len(by_id) != len(self.nodes):
            raise ValueError("duplicate node ids")
        object.__setattr__(self, "_by_id", by_id)

    @property
    def node_ids(self) -> tuple[int, ...]:
        return tuple(n.node_id for n in self.nodes)

    def node(self, node_id: int) -> Node:
        try:
            return self._by_id[node_id]
        except KeyError:
            raise UnknownNode(f"node {node_id} not in instance {self.name!r}") from None


@dataclass(frozen=True, eq=False)
class VrpInstance:
    name: str
    nodes: tuple[Node, ...]
    depot: int
    capacity: int
    demand: dict[int, int]
    max_vehicles: int | None = None
    _by_id: dict[int, Node] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        if len(self.nodes) < 2:
            raise ValueError("instance needs at least 2 nodes")
        by_id = {n.node_id: n for n in self.nodes}
        if len(by_id) != len(self.nodes):
            raise ValueError("duplicate node ids")
        if self.depot not in by_id:
            raise ValueError("depot is not a node")
        if set(self.demand) != set(by_id):
            raise ValueError("demand map must cover exactly the node ids")
        if self.demand[self.depot] != 0:
            raise ValueError("depot demand must be 0")
        if any(d < 0 for d in self.demand.values()):
            raise ValueError("negative demand")
        if self.capacity <= 0:
            raise ValueError("capacity must be positive")
        object.__setattr__(self, "_by_id", by_id)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, VrpInstance):
            return NotImplemented
        return (
            self.name == other.name
            and self.nodes == other.nodes
            and self.depot == other.depot
            and self.capacity == other.capacity
            and self.demand == other.demand
            and self.max_vehicles == other.max_vehicles
        )

    @property
    def node_ids(self) -> tuple[int, ...]:
        return tuple(n.node_id for n in self.nodes)

    @property
    def customers(self) -> tuple[int, ...]:
        return tuple(n.node_id for n in self.nodes if n.node_id != self.depot)

    def node(self, node_id: int) -> Node:
        try:
            return self._by_id[node_id]
        except KeyError:
            raise UnknownNode(f"node {node_id} not in instance {self.name!r}") from None


def distance(instance: TspInstance | VrpInstance, a: int, b: int) -> float:
    """Exact Euclidean distance between two nodes of the instance."""
    na = instance.node(a)
    nb = instance.node(b)
    return math.hypot(na.x - nb.x, na.y - nb.y)


# --- parsing ---------------------------------------------------------------


def _lines(text: str) -> list[tuple[int, str]]:
    out = []
    for i, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line:
            out.append((i, line))
    return out


def _parse_header(lineno: int, line: str) -> tuple[str, str]:
    if ":" not in line:
        raise ParseError(lineno, f"expected 'KEY: value' header, got {line!r}")
    key, _, value = line.partition(":")
    return key.strip(), value.strip()


def _parse_int(lineno: int, token: str, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(lineno, f"{what} must be an integer, got {token!r}") from None


def _parse_float(lineno: int, token: str, what: str) -> float:
    try:
        value = float(token)
    except ValueError:
        raise ParseError(lineno, f"{what} must be a number, got {token!r}") from None
    if not math.isfinite(value):
        raise ParseError(lineno, f"{what} must be finite")
    return value


_TSP_KEYS = {"NAME", "TYPE", "DIMENSION", "EDGE_WEIGHT_TYPE", "COMMENT"}
_VRP_KEYS = _TSP_KEYS | {"CAPACITY", "VEHICLES"}


def _parse_common(text: str, *, vrp: bool):
    lines = _lines(text)
    if not lines:
        raise ParseError(1, "empty document")
    headers: dict[str, str] = {}
    pos = 0
    allowed = _VRP_KEYS if vrp else _TSP_KEYS
    while pos < len(lines):
        lineno, line = lines[pos]
        if line == "NODE_COORD_SECTION":
            break
        key, value = _parse_header(lineno, line)
        if key not in allowed:
            raise ParseError(lineno, f"unknown header key {key!r}")
        if key in headers:
            raise ParseError(lineno, f"duplicate header {key!r}")
        headers[key] = value
        pos += 1
    else:
        raise ParseError(lines[-1][0], "missing NODE_COORD_SECTION")

    want_type = "CVRP" if vrp else "TSP"
    lineno = lines[pos][0]
    if headers.get("TYPE") != want_type:
        raise ParseError(lineno, f"TYPE must be {want_type}")
    if "DIMENSION" not in headers:
        raise ParseError(lineno, "missing DIMENSION header")
    if headers.get("EDGE_WEIGHT_TYPE") != "EUC_2D":
        raise ParseError(lineno, "EDGE_WEIGHT_TYPE must be EUC_2D")
    dimension = _parse_int(lineno, headers["DIMENSION"], "DIMENSION")
    if dimension < 2:
        raise ParseError(lineno, "DIMENSION must be at least 2")
    name = headers.get("NAME", "")

    pos += 1
    nodes: list[Node] = []
    seen: set[int] = set()
    for _ in range(dimension):
        if pos >= len(lines):
            raise ParseError(lines[-1][0], "unexpected end of coordinate section")
        lineno, line = lines[pos]
        parts = line.split()
        if len(parts) != 3:
            raise ParseError(lineno, f"expected '<id> <x> <y>', got {line!r}")
        node_id = _parse_int(lineno, parts[0], "node id")
        if node_id in seen:
            raise ParseError(lineno, f"duplicate node id {node_id}")
        seen.add(node_id)
        nodes.append(
            Node(
                node_id,
                _parse_float(lineno, parts[1], "x coordinate"),
                _parse_float(lineno, parts[2], "y coordinate"),
            )
        )
        pos += 1
    return headers, nodes, lines, pos


def _expect(lines: list[tuple[int, str]], pos: int, token: str) -> int:
    if pos >= len(lines):
        raise ParseError(lines[-1][0], f"missing {token}")
    lineno, line = lines[pos]
    if line != token:
        raise ParseError(lineno, f"expected {token}, got {line!r}")
    return pos + 1


def parse_tsp(text: str) -> TspInstance:
    """Parse a TSP instance document. Raises ParseError on malformed input."""
    headers, nodes, lines, pos = _parse_common(text, vrp=False)
    pos = _expect(lines, pos, "EOF")
    if pos != len(lines):
        raise ParseError(lines[pos][0], "content after EOF")
    return TspInstance(name=headers.get("NAME", ""), nodes=tuple(nodes))


def parse_vrp(text: str) -> VrpInstance:
    """Parse a CVRP instance document. Raises ParseError on malformed input."""
    headers, nodes, lines, pos = _parse_common(text, vrp=True)
    lineno = lines[min(pos, len(lines) - 1)][0]
    if "CAPACITY" not in headers:
        raise ParseError(lineno, "missing CAPACITY header")
    capacity = _parse_int(lineno, headers["CAPACITY"], "CAPACITY")
    if capacity <= 0:
        raise ParseError(lineno, "CAPACITY must be positive")
    max_vehicles: int | None = None
    if "VEHICLES" in headers:
        max_vehicles = _parse_int(lineno, headers["VEHICLES"], "VEHICLES")
        if max_vehicles <= 0:
            raise ParseError(lineno, "VEHICLES must be positive")

    pos = _expect(lines, pos, "DEMAND_SECTION")
    node_ids = {n.node_id for n in nodes}
    demand: dict[int, int] = {}
    for _ in range(len(nodes)):
        if pos >= len(lines):
            raise ParseError(lines[-1][0], "unexpected end of demand section")
        lineno, line = lines[pos]
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(lineno, f"expected '<id> <demand>', got {line!r}")
        node_id = _parse_int(lineno, parts[0], "node id")
        if node_id not in node_ids:
            raise ParseError(lineno, f"demand for unknown node {node_id}")
        if node_id in demand:
            raise ParseError(lineno, f"duplicate demand for node {node_id}")
        value = _parse_int(lineno, parts[1], "demand")
        if value < 0:
            raise ParseError(lineno, "demand must be nonnegative")
        demand[node_id] = value
        pos += 1

    pos = _expect(lines, pos, "DEPOT_SECTION")
    if pos >= len(lines):
        raise ParseError(lines[-1][0], "missing depot id")
    lineno, line = lines[pos]
    depot = _parse_int(lineno, line, "depot id")
    if depot not in node_ids:
        raise ParseError(lineno, f"depot {depot} is not a node")
    pos += 1
    if pos >= len(lines) or lines[pos][1] != "-1":
        raise ParseError(lines[min(pos, len(lines) - 1)][0], "depot section must end with -1")
    pos += 1
    pos = _expect(lines, pos, "EOF")
    if pos != len(lines):
        raise ParseError(lines[pos][0], "content after EOF")

    if demand.get(depot, 0) != 0:
        raise ParseError(lineno, "depot demand must be 0")
    for node_id, value in demand.items():
        if node_id != depot and value > capacity:
            raise ParseError(lineno, f"customer {node_id} demand {value} exceeds capacity {capacity}")
    total = sum(v for k, v in demand.items() if k != depot)
    if max_vehicles is not None and total > max_vehicles * capacity:
        raise ParseError(lineno, "total demand exceeds fleet capacity")

    return VrpInstance(
        name=headers.get("NAME", ""),
        nodes=tuple(nodes),
        depot=depot,
        capacity=capacity,
        demand=demand,
        max_vehicles=max_vehicles,
    )


# --- serialization ---------------------------------------------------------


def _coord(value: float) -> str:
    return repr(float(value))


def serialize_tsp(instance: TspInstance) -> str:
    lines = [
        f"NAME: {instance.name}",
        "TYPE: TSP",
        f"DIMENSION: {len(instance.nodes)}",
        "EDGE_WEIGHT_TYPE: EUC_2D",
        "NODE_COORD_SECTION",
    ]
    lines += [f"{n.node_id} {_coord(n.x)} {_coord(n.y)}" for n in instance.nodes]
    lines.append("EOF")
    return "\n".join(lines) + "\n"


def serialize_vrp(instance: VrpInstance) -> str:
    lines = [
        f"NAME: {instance.name}",
        "TYPE: CVRP",
        f"DIMENSION: {len(instance.nodes)}",
        "EDGE_WEIGHT_TYPE: EUC_2D",
        f"CAPACITY: {instance.capacity}",
    ]
    if instance.max_vehicles is not None:
        lines.append(f"VEHICLES: {instance.max_vehicles}")
    lines.append("NODE_COORD_SECTION")
    lines += [f"{n.node_id} {_coord(n.x)} {_coord(n.y)}" for n in instance.nodes]
    lines.append("DEMAND_SECTION")
    lines += [f"{n.node_id} {instance.demand[n.node_id]}" for n in instance.nodes]
    lines += ["DEPOT_SECTION", str(instance.depot), "-1", "EOF"]
    return "\n".join(lines) + "\n"
