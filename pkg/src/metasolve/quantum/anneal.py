"""Metropolis simulated annealing over QUBO bitstrings.

The kernel consumes pre-drawn uniforms, so results are bit-identical
whether or not the compiled path is available. Energies use an incremental
local field; the reported sample energies are recomputed exactly from the
QUBO at the end of each restart.
"""

from __future__ import annotations

import math
import time

import numpy as np

from metasolve.formats.qubo import Qubo, energy
from metasolve.quantum.jobs import JobKind, QuantumJob, Sample, SampleSet, make_sample_set


def _kernel_py(diag, sym, x, betas, uniforms):
    n = x.shape[0]
    sweeps = betas.shape[0]
    field = sym @ x
    current = float(diag @ x + 0.5 * (x @ field))
    best = current
    best_x = x.copy()
    trace = np.empty(sweeps)
    for s in range(sweeps):
        beta = betas[s]
        for i in range(n):
            sign = 1.0 - 2.0 * x[i]
            delta = sign * (diag[i] + field[i])
            if delta <= 0.0 or uniforms[s, i] < math.exp(-beta * delta):
                x[i] = 1.0 - x[i]
                for j in range(n):
                    field[j] += sign * sym[j, i]
                current += delta
                if current < best:
                    best = current
                    best_x[:] = x
        trace[s] = best
    return best_x, trace


try:
    from numba import njit

    _kernel = njit(cache=True)(_kernel_py)
except ImportError:
    _kernel = _kernel_py


def split_qubo(qubo: Qubo) -> tuple[np.ndarray, np.ndarray]:
    """Diagonal vector and zero-diagonal symmetric off-diagonal matrix."""
    diag = np.zeros(qubo.n)
    sym = np.zeros((qubo.n, qubo.n))
    for (i, j), coeff in qubo.coefficients.items():
        if i == j:
            diag[i] += coeff
        else:
            sym[i, j] += coeff
            sym[j, i] += coeff
    return diag, sym


def simulated_anneal(job: QuantumJob, backend_name: str = "local-sa") -> SampleSet:
    """One best-state sample per restart; reproducible from job.seed."""
    if job.kind is not JobKind.ANNEAL:
        raise ValueError("simulated_anneal requires an ANNEAL job")
    params = job.anneal
    diag, sym = split_qubo(job.qubo)
    betas = np.geomspace(params.beta_start, params.beta_end, params.sweeps)
    started = time.perf_counter()
    samples: list[Sample] = []
    traces: list[tuple[float, ...]] = []
    for restart in range(params.restarts):
        rng = np.random.default_rng(np.random.SeedSequence((job.seed, restart)))
        x = rng.integers(0, 2, job.qubo.n).astype(np.float64)
        uniforms = rng.random((params.sweeps, job.qubo.n))
        best_x, trace = _kernel(diag, sym, x, betas, uniforms)
        bits = tuple(int(b) for b in best_x)
        samples.append(Sample(bits=bits, energy=energy(job.qubo, bits)))
        traces.append(tuple(float(t) + job.qubo.offset for t in trace))
    elapsed = (time.perf_counter() - started) * 1000.0
    return make_sample_set(
        samples,
        backend_name=backend_name,
        timings={"totalMs": elapsed},
        traces=traces,
    )
