"""Deterministic benchmark instance generation.

Ten routing instances with 4 to 8 customers (two per size), unit demands,
vehicle capacity ceil(n/2) and two vehicles, coordinates drawn uniformly
from [0,100] squared. The layout guarantees feasibility with at most two
routes. Files are byte-identical for a fixed seed.
"""

from __future__ import annotations

import math
import random
from pathlib import Path

from metasolve.formats import Node, VrpInstance, parse_vrp, serialize_vrp

SIZES = (4, 5, 6, 7, 8)
COPIES = ("a", "b")


def generate_suite(seed: int) -> tuple[VrpInstance, ...]:
    rng = random.Random(seed)
    instances = []
    for n in SIZES:
        for tag in COPIES:
            nodes = tuple(
                Node(i + 1, rng.uniform(0.0, 100.0), rng.uniform(0.0, 100.0))
                for i in range(n + 1)
            )
            demand = {node.node_id: 1 for node in nodes}
            demand[1] = 0
            instances.append(
                VrpInstance(
                    name=f"qopt-n{n}{tag}",
                    nodes=nodes,
                    depot=1,
                    capacity=math.ceil(n / 2),
                    demand=demand,
                    max_vehicles=2,
                )
            )
    return tuple(instances)


def write_suite(instances, out_dir: str | Path) -> list[Path]:
    directory = Path(out_dir)
    directory.mkdir(parents=True, exist_ok=True)
    paths = []
    for instance in instances:
        path = directory / f"{instance.name}.vrp"
        path.write_text(serialize_vrp(instance))
        paths.append(path)
    return paths


def load_suite(suite_dir: str | Path) -> tuple[VrpInstance, ...]:
    directory = Path(suite_dir)
    paths = sorted(directory.glob("*.vrp"))
    if not paths:
        raise FileNotFoundError(f"no .vrp files in {directory}")
    return tuple(parse_vrp(path.read_text()) for path in paths)
