"""Turning sample sets back into tours."""

from __future__ import annotations

from typing import Callable

from metasolve.classical.tsp import Tour
from metasolve.quantum.jobs import SampleSet
from metasolve.qubo_transform import TspQuboEncoding, decode_bitstring

Resampler = Callable[[int], SampleSet]


def sampleset_to_solution(
    encoding: TspQuboEncoding,
    samples: SampleSet,
    retry_budget: int = 0,
    resample: Resampler | None = None,
) -> Tour | None:
    """First valid tour in ascending-energy order, or None when exhausted.

    When no sample decodes to a tour, `resample(attempt)` is asked for a
    fresh SampleSet up to retry_budget times. None maps to INVALID status
    at the solver layer; no bit repair is attempted.
    """
    current = samples
    attempt = 0
    while True:
        ordered = sorted(current.samples, key=lambda s: (s.energy, s.bits))
        for sample in ordered:
            decoded = decode_bitstring(encoding, sample.bits)
            if isinstance(decoded, Tour):
                return decoded
        attempt += 1
        if resample is None or attempt > retry_budget:
            return None
        current = resample(attempt)
