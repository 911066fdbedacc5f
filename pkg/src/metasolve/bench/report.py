"""CSV and summary emission for benchmark results.

The CSV is the raw record (one row per run); baselines ride in a JSON
sidecar next to it so the report step needs no re-solving. The summary
aligns each instance's runs against both baselines. Hybrid timings include
the simulator, so they are not comparable with classical timings and the
summary labels them accordingly.
"""

from __future__ import annotations

import csv
import json
import math
from pathlib import Path

from metasolve.bench.pipeline import BenchmarkRun

CSV_HEADER = ("instance", "pipeline", "run", "length", "valid", "ms", "seed")


def baselines_path_for(csv_path: str | Path) -> Path:
    path = Path(csv_path)
    return path.with_name(path.stem + ".baselines.json")


def write_csv(runs, csv_path: str | Path) -> None:
    with open(csv_path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(CSV_HEADER)
        for run in runs:
            writer.writerow(
                [
                    run.instance_name,
                    run.pipeline,
                    run.run_index,
                    repr(run.route_length),
                    "true" if run.valid else "false",
                    run.wall_time_ms,
                    run.seed,
                ]
            )


def read_csv(csv_path: str | Path) -> list[BenchmarkRun]:
    runs = []
    with open(csv_path, newline="") as handle:
        reader = csv.reader(handle)
        header = next(reader)
        if tuple(header) != CSV_HEADER:
            raise ValueError(f"unexpected CSV header: {header}")
        for row in reader:
            runs.append(
                BenchmarkRun(
                    instance_name=row[0],
                    pipeline=row[1],
                    run_index=int(row[2]),
                    route_length=float(row[3]),
                    valid=row[4] == "true",
                    wall_time_ms=int(row[5]),
                    seed=int(row[6]),
                )
            )
    return runs


def write_baselines(baselines: dict[str, dict[str, float]], path: str | Path) -> None:
    Path(path).write_text(json.dumps(baselines, indent=2, sort_keys=True) + "\n")


def read_baselines(path: str | Path) -> dict[str, dict[str, float]]:
    return json.loads(Path(path).read_text())


def _fmt(value: float) -> str:
    if value is None or (isinstance(value, float) and math.isnan(value)):
        return "-"
    return f"{value:.3f}"


def summarize(runs, baselines) -> str:
    by_instance: dict[str, dict[str, list[BenchmarkRun]]] = {}
    for run in runs:
        by_instance.setdefault(run.instance_name, {}).setdefault(run.pipeline, []).append(run)

    columns = (
        "instance",
        "opt",
        "opt-clustered",
        "classical-best",
        "hybrid-best",
        "hybrid-worst",
        "valid",
    )
    rows = [columns]
    for name in sorted(by_instance):
        base = baselines.get(name, {})
        groups = by_instance[name]
        classical = [r.route_length for r in groups.get("classical", []) if r.valid]
        hybrid = [r.route_length for r in groups.get("hybrid", []) if r.valid]
        total = sum(len(v) for v in groups.values())
        valid_count = sum(1 for v in groups.values() for r in v if r.valid)
        rows.append(
            (
                name,
                _fmt(base.get("withoutClustering")),
                _fmt(base.get("withClustering")),
                _fmt(min(classical)) if classical else "-",
                _fmt(min(hybrid)) if hybrid else "-",
                _fmt(max(hybrid)) if hybrid else "-",
                f"{valid_count}/{total}",
            )
        )
    widths = [max(len(row[i]) for row in rows) for i in range(len(columns))]
    lines = []
    for index, row in enumerate(rows):
        lines.append("  ".join(cell.ljust(widths[i]) for i, cell in enumerate(row)).rstrip())
        if index == 0:
            lines.append("  ".join("-" * w for w in widths))
    lines.append("")
    lines.append("note: hybrid wall times include the in-process sampling simulator")
    return "\n".join(lines) + "\n"


def write_summary(runs, baselines, path: str | Path) -> None:
    Path(path).write_text(summarize(runs, baselines))
