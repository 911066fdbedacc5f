"""Quantum job descriptions and sample sets.

A job is self-contained: the kind, the sampling budget, the schedule or
circuit parameters, and the QUBO itself. The text form (header lines, then
the QUBO grammar) is what a quantum-circuit-processing child problem
receives as input.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from metasolve.errors import ParseError
from metasolve.formats.qubo import Qubo, energy, parse_qubo, serialize_qubo


class JobKind(enum.Enum):
    ANNEAL = "ANNEAL"
    QAOA = "QAOA"


@dataclass(frozen=True)
class AnnealParams:
    sweeps: int = 1000
    restarts: int = 10
    beta_start: float = 0.1
    beta_end: float = 10.0

    def __post_init__(self) -> None:
        if self.sweeps < 1 or self.restarts < 1:
            raise ValueError("sweeps and restarts must be positive")
        if self.beta_start <= 0 or self.beta_end < self.beta_start:
            raise ValueError("schedule needs 0 < betaStart <= betaEnd")


@dataclass(frozen=True)
class QaoaParams:
    layers: int = 2
    iterations: int = 120
    param_seed: int = 0

    def __post_init__(self) -> None:
        if self.layers < 0:
            raise ValueError("layers must be >= 0")
        if self.iterations < 1:
            raise ValueError("iterations must be positive")


@dataclass(frozen=True)
class QuantumJob:
    kind: JobKind
    qubo: Qubo
    shots: int = 200
    seed: int = 0
    anneal: AnnealParams = field(default_factory=AnnealParams)
    qaoa: QaoaParams = field(default_factory=QaoaParams)

    def __post_init__(self) -> None:
        if self.shots < 1:
            raise ValueError("shots must be positive")


@dataclass(frozen=True)
class Sample:
    bits: tuple[int, ...]
    energy: float
    multiplicity: int = 1


@dataclass(frozen=True)
class SampleSet:
    samples: tuple[Sample, ...]
    best_index: int
    backend_name: str
    timings: dict[str, float] = field(default_factory=dict)
    # per-restart best-so-far energy traces, kept for diagnostics only
    traces: tuple[tuple[float, ...], ...] = ()

    @property
    def best(self) -> Sample:
        return self.samples[self.best_index]


def make_sample_set(
    samples,
    backend_name: str,
    timings: dict[str, float] | None = None,
    traces=(),
) -> SampleSet:
    """Build a SampleSet with best_index pointing at the minimum energy."""
    samples = tuple(samples)
    if not samples:
        raise ValueError("a sample set needs at least one sample")
    best_index = min(range(len(samples)), key=lambda i: (samples[i].energy, i))
    return SampleSet(
        samples=samples,
        best_index=best_index,
        backend_name=backend_name,
        timings=dict(timings or {}),
        traces=tuple(tuple(t) for t in traces),
    )


def verify_sample_energies(sample_set: SampleSet, qubo: Qubo, tolerance: float = 1e-9) -> bool:
    """True when every stored energy matches a recomputation from the qubo."""
    for sample in sample_set.samples:
        expected = energy(qubo, sample.bits)
        if abs(sample.energy - expected) > tolerance * max(1.0, abs(expected)):
            return False
    return True


def serialize_quantum_job(job: QuantumJob) -> str:
    lines = [f"KIND {job.kind.value}", f"SHOTS {job.shots}", f"SEED {job.seed}"]
    if job.kind is JobKind.ANNEAL:
        a = job.anneal
        lines += [
            f"SWEEPS {a.sweeps}",
            f"RESTARTS {a.restarts}",
            f"BETA_START {a.beta_start!r}",
            f"BETA_END {a.beta_end!r}",
        ]
    else:
        q = job.qaoa
        lines += [
            f"LAYERS {q.layers}",
            f"ITERATIONS {q.iterations}",
            f"PARAM_SEED {q.param_seed}",
        ]
    lines.append("QUBO")
    lines.append(serialize_qubo(job.qubo).rstrip("\n"))
    return "\n".join(lines) + "\n"


def parse_quantum_job(text: str) -> QuantumJob:
    """Parse the job text form; ParseError carries 1-based line numbers."""
    header: dict[str, str] = {}
    lines = text.splitlines()
    qubo_start = None
    for index, raw in enumerate(lines):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line == "QUBO":
            qubo_start = index + 1
            break
        parts = line.split(None, 1)
        if len(parts) != 2:
            raise ParseError(index + 1, f"expected 'KEY value', got {raw!r}")
        key = parts[0].upper()
        if key in header:
            raise ParseError(index + 1, f"duplicate key {key}")
        header[key] = parts[1]
    if qubo_start is None:
        raise ParseError(len(lines) or 1, "missing QUBO section")
    if "KIND" not in header:
        raise ParseError(1, "missing KIND")
    try:
        kind = JobKind(header["KIND"].upper())
    except ValueError:
        raise ParseError(1, f"unknown job kind {header['KIND']!r}") from None
    qubo = parse_qubo("\n".join(lines[qubo_start:]) + "\n")

    def _int(key: str, default: int) -> int:
        try:
            return int(header[key]) if key in header else default
        except ValueError:
            raise ParseError(1, f"{key} must be an integer") from None

    def _float(key: str, default: float) -> float:
        try:
            return float(header[key]) if key in header else default
        except ValueError:
            raise ParseError(1, f"{key} must be a number") from None

    try:
        if kind is JobKind.ANNEAL:
            params = AnnealParams(
                sweeps=_int("SWEEPS", 1000),
                restarts=_int("RESTARTS", 10),
                beta_start=_float("BETA_START", 0.1),
                beta_end=_float("BETA_END", 10.0),
            )
            return QuantumJob(
                kind=kind,
                qubo=qubo,
                shots=_int("SHOTS", 200),
                seed=_int("SEED", 0),
                anneal=params,
            )
        params = QaoaParams(
            layers=_int("LAYERS", 2),
            iterations=_int("ITERATIONS", 120),
            param_seed=_int("PARAM_SEED", 0),
        )
        return QuantumJob(
            kind=kind,
            qubo=qubo,
            shots=_int("SHOTS", 200),
            seed=_int("SEED", 0),
            qaoa=params,
        )
    except ValueError as exc:
        raise ParseError(1, str(exc)) from None
