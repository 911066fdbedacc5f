"""Backend registry, matching, and job dispatch."""

from __future__ import annotations

import enum
from dataclasses import dataclass

from metasolve.errors import (
    AuthenticationRequired,
    BackendMismatch,
    NoCompatibleBackend,
    RemoteUnavailable,
)
from metasolve.quantum.anneal import simulated_anneal
from metasolve.quantum.jobs import JobKind, QuantumJob, SampleSet
from metasolve.quantum.qaoa import STATEVECTOR_LIMIT, qaoa_statevector


class BackendKind(enum.Enum):
    LOCAL_SIMULATOR = "LOCAL_SIMULATOR"
    REMOTE_STUB = "REMOTE_STUB"


@dataclass(frozen=True)
class BackendDescriptor:
    name: str
    kind: BackendKind
    supported_kinds: frozenset[JobKind]
    max_qubits: int | None = None
    requires_token: bool = False

    def __post_init__(self) -> None:
        if self.kind is BackendKind.LOCAL_SIMULATOR and self.requires_token:
            raise ValueError("local simulators must not require a token")

    def fits(self, job: QuantumJob) -> bool:
        if job.kind not in self.supported_kinds:
            return False
        return self.max_qubits is None or job.qubo.n <= self.max_qubits


DEFAULT_BACKENDS: tuple[BackendDescriptor, ...] = (
    BackendDescriptor(
        name="local-sa",
        kind=BackendKind.LOCAL_SIMULATOR,
        supported_kinds=frozenset({JobKind.ANNEAL}),
    ),
    BackendDescriptor(
        name="local-qaoa-statevector",
        kind=BackendKind.LOCAL_SIMULATOR,
        supported_kinds=frozenset({JobKind.QAOA}),
        max_qubits=STATEVECTOR_LIMIT,
    ),
    BackendDescriptor(
        name="remote-stub",
        kind=BackendKind.REMOTE_STUB,
        supported_kinds=frozenset({JobKind.ANNEAL, JobKind.QAOA}),
        requires_token=True,
    ),
)


def match_backend(
    job: QuantumJob,
    backends: tuple[BackendDescriptor, ...] = DEFAULT_BACKENDS,
    user_choice: str | None = None,
    token: str | None = None,
) -> BackendDescriptor:
    """Validate an explicit choice, or pick the first fitting local simulator."""
    if user_choice:
        for backend in backends:
            if backend.name == user_choice:
                if not backend.fits(job):
                    raise NoCompatibleBackend(
                        f"backend {backend.name!r} cannot run this "
                        f"{job.kind.value} job with {job.qubo.n} variables"
                    )
                if backend.requires_token and not token:
                    raise AuthenticationRequired(
                        f"backend {backend.name!r} needs an access token; "
                        "select another backend or supply one"
                    )
                return backend
        raise NoCompatibleBackend(f"no backend named {user_choice!r}")
    for backend in backends:
        if backend.kind is BackendKind.LOCAL_SIMULATOR and backend.fits(job):
            return backend
    raise NoCompatibleBackend(
        f"no local simulator accepts a {job.kind.value} job "
        f"with {job.qubo.n} variables"
    )


def run_quantum_job(
    job: QuantumJob, backend: BackendDescriptor, token: str | None = None
) -> SampleSet:
    """Re-check compatibility, then dispatch to the matching simulator."""
    if not backend.fits(job):
        raise BackendMismatch(
            f"backend {backend.name!r} does not fit a {job.kind.value} job "
            f"with {job.qubo.n} variables"
        )
    if backend.kind is BackendKind.REMOTE_STUB:
        raise RemoteUnavailable("remote backends are out of scope; supply a local simulator")
    if job.kind is JobKind.ANNEAL:
        return simulated_anneal(job, backend_name=backend.name)
    return qaoa_statevector(job, backend_name=backend.name)
