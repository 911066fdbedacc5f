from metasolve.quantum.anneal import simulated_anneal, split_qubo
from metasolve.quantum.backends import (
    DEFAULT_BACKENDS,
    BackendDescriptor,
    BackendKind,
    match_backend,
    run_quantum_job,
)
from metasolve.quantum.decode import sampleset_to_solution
from metasolve.quantum.jobs import (
    AnnealParams,
    JobKind,
    QaoaParams,
    QuantumJob,
    Sample,
    SampleSet,
    make_sample_set,
    parse_quantum_job,
    serialize_quantum_job,
    verify_sample_energies,
)
from metasolve.quantum.qaoa import (
    STATEVECTOR_LIMIT,
    evolve_statevector,
    expectation,
    gate_list_text,
    optimize_angles,
    qaoa_statevector,
)

__all__ = [
    "AnnealParams",
    "BackendDescriptor",
    "BackendKind",
    "DEFAULT_BACKENDS",
    "JobKind",
    "QaoaParams",
    "QuantumJob",
    "STATEVECTOR_LIMIT",
    "Sample",
    "SampleSet",
    "evolve_statevector",
    "expectation",
    "gate_list_text",
    "make_sample_set",
    "match_backend",
    "optimize_angles",
    "parse_quantum_job",
    "qaoa_statevector",
    "run_quantum_job",
    "sampleset_to_solution",
    "serialize_quantum_job",
    "simulated_anneal",
    "split_qubo",
    "verify_sample_energies",
]
