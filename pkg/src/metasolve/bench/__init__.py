"""Benchmark harness: suite generation, pipeline drivers, reporting."""

from metasolve.bench.pipeline import (
    BenchmarkRun,
    CLASSICAL,
    EmbeddedDriver,
    HYBRID,
    HttpDriver,
    PIPELINES,
    compute_baselines,
    run_pipeline,
)
from metasolve.bench.suite import generate_suite, load_suite, write_suite

__all__ = [
    "BenchmarkRun",
    "CLASSICAL",
    "HYBRID",
    "PIPELINES",
    "EmbeddedDriver",
    "HttpDriver",
    "compute_baselines",
    "run_pipeline",
    "generate_suite",
    "load_suite",
    "write_suite",
]
