"""Solver catalog: adapters that bind the algorithm layer to the problem
lifecycle.

Every adapter parses its problem input from text, runs one algorithm (or
spawns child problems), and serializes the outcome back to text, so the
manager and the HTTP layer never touch algorithm-specific types.

Decomposing adapters expose two conventions used throughout:

* ``childSolver``: solver id assigned to every spawned child; the empty
  string leaves children unconfigured for interactive use.
* ``childSettings``: JSON object string applied to every spawned child.
  Nesting works by embedding another JSON string under the same keys, which
  is how a whole solver chain is configured in one request.
"""

from __future__ import annotations

import json

from metasolve.classical import (
    build_tour,
    knapsack_branch_bound,
    knapsack_dp,
    tsp_held_karp,
    tsp_nearest_neighbor,
    tsp_two_opt,
    validate_routes,
    vrp_savings,
)
from metasolve.core import (
    ChildRequest,
    ProblemManager,
    ProblemType,
    SettingDescriptor,
    SettingKind,
    Solution,
    SolutionStatus,
    Solver,
    SolverDescriptor,
    SolverRegistry,
)
from metasolve.decomposition import (
    cluster_to_tsp,
    compose_routes,
    kmeans_cluster,
    two_phase_cluster,
)
from metasolve.errors import (
    AuthenticationRequired,
    InvalidSolution,
    SolverFailure,
)
from metasolve.formats import (
    RouteSolution,
    parse_bitstring_solution,
    parse_knapsack,
    parse_qubo,
    parse_routes,
    parse_tsp,
    parse_vrp,
    serialize_bitstring_solution,
    serialize_knapsack_solution,
    serialize_qubo,
    serialize_routes,
    serialize_tsp,
)
from metasolve.quantum import (
    DEFAULT_BACKENDS,
    AnnealParams,
    JobKind,
    QaoaParams,
    QuantumJob,
    Sample,
    SampleSet,
    make_sample_set,
    match_backend,
    parse_quantum_job,
    run_quantum_job,
    sampleset_to_solution,
    serialize_quantum_job,
)
from metasolve.qubo_transform import TspQuboEncoding, encode_tsp

VRP = "cluster-vrp"
TSP = "tsp"
QUBO = "qubo"
KNAPSACK = "knapsack"
QCP = "quantum-circuit-processing"

PROBLEM_TYPES = (
    ProblemType(VRP, "Capacitated vehicle routing over Euclidean coordinates"),
    ProblemType(TSP, "Travelling salesperson over Euclidean coordinates"),
    ProblemType(QUBO, "Quadratic unconstrained binary optimization"),
    ProblemType(KNAPSACK, "0/1 knapsack with integer weights", direction="maximize"),
    ProblemType(QCP, "Sampling jobs executed on quantum-style backends"),
)

_BACKEND_BY_NAME = {backend.name: backend for backend in DEFAULT_BACKENDS}

# Which leaf solver handles a job once a backend has been matched.
_QCP_SOLVER_BY_BACKEND = {
    "local-sa": "qcp.sim.anneal",
    "local-qaoa-statevector": "qcp.sim.qaoa-statevector",
    "remote-stub": "qcp.remote.stub",
}

_CHILD_SETTINGS = (
    SettingDescriptor(
        "childSolver",
        SettingKind.TEXT,
        "",
        description="Solver id assigned to spawned children; empty leaves them unconfigured",
    ),
    SettingDescriptor(
        "childSettings",
        SettingKind.TEXT,
        "{}",
        description="JSON object of settings applied to spawned children",
    ),
)


def _parse_child_settings(raw: object) -> dict[str, object]:
    try:
        parsed = json.loads(str(raw))
    except json.JSONDecodeError as exc:
        raise SolverFailure(f"childSettings is not valid JSON: {exc}") from exc
    if not isinstance(parsed, dict):
        raise SolverFailure("childSettings must be a JSON object")
    return parsed


def _solved(result: str, objective: float, **metadata: str) -> Solution:
    return Solution(
        status=SolutionStatus.SOLVED,
        result=result,
        objective_value=objective,
        metadata=dict(metadata),
    )


def _tour_result(order, length: float) -> str:
    return serialize_routes(RouteSolution(routes=[list(order)], total_length=length))


def _parse_single_route(text: str):
    solution = parse_routes(text)
    if len(solution.routes) != 1:
        raise SolverFailure("expected a single cyclic route in the child result")
    return solution.routes[0]


def _tour_from_child(child):
    # Child solutions carry the cyclic order as text; the length is rebuilt
    # from the child's own instance so parent totals never depend on decimal
    # round-trips.
    sub_instance = parse_tsp(child.input)
    return build_tour(sub_instance, tuple(_parse_single_route(child.solution.result)))


class _ClusterSolverBase(Solver):
    """Shared decompose/compose for the two clustering strategies."""

    def _clustering(self, instance, settings):
        raise NotImplementedError

    def decompose(self, input_text, settings):
        instance = parse_vrp(input_text)
        clustering = self._clustering(instance, settings)
        child_solver = str(settings["childSolver"]) or None
        child_settings = _parse_child_settings(settings["childSettings"])
        requests = []
        for cluster in clustering.clusters:
            sub_instance = cluster_to_tsp(instance, cluster)
            requests.append(
                ChildRequest(
                    type_id=TSP,
                    input=serialize_tsp(sub_instance),
                    solver_id=child_solver,
                    solver_settings=dict(child_settings),
                )
            )
        return requests

    def compose(self, input_text, settings, children):
        instance = parse_vrp(input_text)
        tours = [_tour_from_child(child) for child in children]
        solution = compose_routes(instance, tours)
        report = validate_routes(instance, solution)
        if report.violations:
            raise InvalidSolution("; ".join(v.detail for v in report.violations))
        return _solved(
            serialize_routes(solution),
            solution.total_length,
            routeCount=str(len(solution.routes)),
        )


class TwoPhaseClusterSolver(_ClusterSolverBase):
    descriptor = SolverDescriptor(
        solver_id="vrp.clusterer.two-phase",
        name="Two-phase clustering",
        description=(
            "Builds capacity-feasible clusters with a knapsack fill around "
            "farthest-point seeds, then routes each cluster as a child tour "
            "problem and concatenates the results"
        ),
        problem_type_id=VRP,
        settings=_CHILD_SETTINGS,
        sub_routines=(TSP,),
    )

    def _clustering(self, instance, settings):
        return two_phase_cluster(instance, knapsack_dp)


class KMeansClusterSolver(_ClusterSolverBase):
    descriptor = SolverDescriptor(
        solver_id="vrp.clusterer.k-means",
        name="Capacitated k-means clustering",
        description=(
            "Lloyd iterations over customer coordinates with capacity repair, "
            "then routes each cluster as a child tour problem"
        ),
        problem_type_id=VRP,
        settings=_CHILD_SETTINGS
        + (
            SettingDescriptor(
                "clusters",
                SettingKind.INTEGER,
                0,
                description="Cluster count; 0 derives the minimum feasible count",
            ),
            SettingDescriptor("seed", SettingKind.INTEGER, 0),
            SettingDescriptor("maxIterations", SettingKind.INTEGER, 50),
        ),
        sub_routines=(TSP,),
    )

    def _clustering(self, instance, settings):
        return kmeans_cluster(
            instance,
            k=int(settings["clusters"]),
            seed=int(settings["seed"]),
            max_iterations=int(settings["maxIterations"]),
        )


class SavingsVrpSolver(Solver):
    descriptor = SolverDescriptor(
        solver_id="vrp.classical.savings",
        name="Parallel savings heuristic",
        description="Clarke-Wright parallel savings construction with per-route 2-opt",
        problem_type_id=VRP,
    )

    def solve(self, input_text, settings):
        instance = parse_vrp(input_text)
        solution = vrp_savings(instance)
        return _solved(
            serialize_routes(solution),
            solution.total_length,
            routeCount=str(len(solution.routes)),
        )


class TwoOptTspSolver(Solver):
    descriptor = SolverDescriptor(
        solver_id="tsp.classical.two-opt",
        name="Nearest-neighbor + 2-opt",
        description=(
            "Construction by nearest neighbor followed by first-improvement "
            "2-opt passes; in-process replacement for an external "
            "Lin-Kernighan-style executable, which it matches on instances "
            "of the size handled here"
        ),
        problem_type_id=TSP,
        settings=(
            SettingDescriptor("maxPasses", SettingKind.INTEGER, 50),
            SettingDescriptor("seed", SettingKind.INTEGER, 0),
        ),
    )

    def solve(self, input_text, settings):
        instance = parse_tsp(input_text)
        start = min(node.node_id for node in instance.nodes)
        initial = tsp_nearest_neighbor(instance, start)
        tour = tsp_two_opt(
            instance,
            initial,
            max_passes=int(settings["maxPasses"]),
            seed=int(settings["seed"]),
        )
        return _solved(_tour_result(tour.order, tour.length), tour.length)


class HeldKarpTspSolver(Solver):
    descriptor = SolverDescriptor(
        solver_id="tsp.exact.held-karp",
        name="Held-Karp exact solver",
        description="Provably optimal tours via bitmask dynamic programming (up to 20 nodes)",
        problem_type_id=TSP,
    )

    def solve(self, input_text, settings):
        instance = parse_tsp(input_text)
        tour = tsp_held_karp(instance)
        return _solved(_tour_result(tour.order, tour.length), tour.length)


def _encode_from_settings(instance, settings) -> TspQuboEncoding:
    penalty = float(settings["penaltyA"])
    return encode_tsp(
        instance,
        weight_b=float(settings["weightB"]),
        penalty_a=penalty if penalty > 0 else None,
    )


def _job_from_settings(qubo, settings, seed: int) -> QuantumJob:
    kind = JobKind.ANNEAL if settings["kind"] == "anneal" else JobKind.QAOA
    return QuantumJob(
        kind=kind,
        qubo=qubo,
        shots=int(settings["shots"]),
        seed=seed,
        anneal=AnnealParams(
            sweeps=int(settings["sweeps"]),
            restarts=int(settings["restarts"]),
            beta_start=float(settings["betaStart"]),
            beta_end=float(settings["betaEnd"]),
        ),
        qaoa=QaoaParams(
            layers=int(settings["qaoaLayers"]),
            iterations=int(settings["qaoaIterations"]),
            param_seed=int(settings["qaoaParamSeed"]),
        ),
    )


def _sample_set_json(samples: SampleSet) -> str:
    return json.dumps(
        {
            "backend": samples.backend_name,
            "samples": [
                ["".join(str(b) for b in s.bits), s.energy, s.multiplicity]
                for s in samples.samples
            ],
            "timings": samples.timings,
        }
    )


def _sample_set_from_child(child) -> SampleSet:
    metadata = child.solution.metadata
    if "sampleSet" in metadata:
        doc = json.loads(metadata["sampleSet"])
        samples = [
            Sample(
                bits=tuple(int(b) for b in bits),
                energy=float(energy_value),
                multiplicity=int(multiplicity),
            )
            for bits, energy_value, multiplicity in doc["samples"]
        ]
        return make_sample_set(samples, backend_name=doc.get("backend", "unknown"))
    bits, energy_value = parse_bitstring_solution(child.solution.result)
    return make_sample_set(
        [Sample(bits=tuple(int(b) for b in bits), energy=energy_value)],
        backend_name="exact",
    )


class QuboTransformTspSolver(Solver):
    """Routes a tour problem through a binary-quadratic child problem."""

    descriptor = SolverDescriptor(
        solver_id="tsp.transform.qubo",
        name="One-hot binary-quadratic transformation",
        description=(
            "Encodes the tour as a position-assignment penalty model, solves "
            "it as a child problem, and decodes sampled bitstrings back into "
            "a tour"
        ),
        problem_type_id=TSP,
        settings=_CHILD_SETTINGS
        + (
            SettingDescriptor(
                "weightB",
                SettingKind.REAL,
                1.0,
                description="Multiplier on the tour-length objective term",
            ),
            SettingDescriptor(
                "penaltyA",
                SettingKind.REAL,
                0.0,
                description="Constraint penalty weight; 0 derives the smallest safe value",
            ),
            SettingDescriptor(
                "retries",
                SettingKind.INTEGER,
                2,
                description="Resampling attempts when no sample decodes to a valid tour",
            ),
        ),
        sub_routines=(QUBO,),
    )

    def decompose(self, input_text, settings):
        instance = parse_tsp(input_text)
        encoding = _encode_from_settings(instance, settings)
        child_solver = str(settings["childSolver"]) or None
        child_settings = _parse_child_settings(settings["childSettings"])
        return [
            ChildRequest(
                type_id=QUBO,
                input=serialize_qubo(encoding.qubo),
                solver_id=child_solver,
                solver_settings=child_settings,
            )
        ]

    def compose(self, input_text, settings, children):
        instance = parse_tsp(input_text)
        encoding = _encode_from_settings(instance, settings)
        child = children[0]
        sample_set = _sample_set_from_child(child)
        resample = self._resampler(child)
        tour = sampleset_to_solution(
            encoding,
            sample_set,
            retry_budget=int(settings["retries"]) if resample else 0,
            resample=resample,
        )
        if tour is None:
            raise InvalidSolution(
                "no sampled bitstring decoded to a valid tour within the retry budget"
            )
        return _solved(
            _tour_result(tour.order, tour.length),
            tour.length,
            variables=str(encoding.qubo.n),
        )

    @staticmethod
    def _resampler(child):
        if child.solver_id != "qubo.sampler.quantum":
            return None
        qubo = parse_qubo(child.input)
        base = dict(child.solver_settings)

        # Retries re-run the sampler in-process with a shifted seed; going
        # back through the lifecycle would leave the parent SOLVING forever
        # on a child that already terminated.
        def resample(attempt: int) -> SampleSet:
            job = _job_from_settings(qubo, base, int(base["seed"]) + 7919 * attempt)
            backend = match_backend(
                job,
                user_choice=str(base["backend"]) or None,
                token=str(base["token"]) or None,
            )
            return run_quantum_job(job, backend, token=str(base["token"]) or None)

        return resample


class DpKnapsackSolver(Solver):
    descriptor = SolverDescriptor(
        solver_id="knapsack.classical.dp",
        name="Dynamic-programming knapsack",
        description="Exact table-based maximization with lexicographic tie-breaking",
        problem_type_id=KNAPSACK,
    )

    algorithm = staticmethod(knapsack_dp)

    def solve(self, input_text, settings):
        instance = parse_knapsack(input_text)
        solution = self.algorithm(instance)
        return _solved(
            serialize_knapsack_solution(solution.chosen, solution.value, solution.weight),
            solution.value,
        )


class BranchBoundKnapsackSolver(DpKnapsackSolver):
    descriptor = SolverDescriptor(
        solver_id="knapsack.classical.branch-bound",
        name="Branch-and-bound knapsack",
        description="Depth-first search with fractional upper-bound pruning",
        problem_type_id=KNAPSACK,
    )

    algorithm = staticmethod(knapsack_branch_bound)


class QuantumSamplerQuboSolver(Solver):
    """Hands the model to a sampling child and surfaces the best sample."""

    descriptor = SolverDescriptor(
        solver_id="qubo.sampler.quantum",
        name="Quantum-style sampler",
        description=(
            "Packages the model as a sampling job, matches it to a fitting "
            "backend, and reports the lowest-energy sample"
        ),
        problem_type_id=QUBO,
        settings=(
            SettingDescriptor(
                "kind",
                SettingKind.CHOICE,
                "anneal",
                choices=("anneal", "qaoa"),
                description="Sampling algorithm to run",
            ),
            SettingDescriptor("shots", SettingKind.INTEGER, 200),
            SettingDescriptor("seed", SettingKind.INTEGER, 0),
            SettingDescriptor("sweeps", SettingKind.INTEGER, 1000),
            SettingDescriptor("restarts", SettingKind.INTEGER, 10),
            SettingDescriptor("betaStart", SettingKind.REAL, 0.1),
            SettingDescriptor("betaEnd", SettingKind.REAL, 10.0),
            SettingDescriptor("qaoaLayers", SettingKind.INTEGER, 2),
            SettingDescriptor("qaoaIterations", SettingKind.INTEGER, 120),
            SettingDescriptor("qaoaParamSeed", SettingKind.INTEGER, 0),
            SettingDescriptor(
                "backend",
                SettingKind.TEXT,
                "",
                description="Backend name; empty picks the first fitting local simulator",
            ),
            SettingDescriptor(
                "token",
                SettingKind.TEXT,
                "",
                description="Access token for backends that require one",
            ),
        ),
        sub_routines=(QCP,),
    )

    def decompose(self, input_text, settings):
        qubo = parse_qubo(input_text)
        job = _job_from_settings(qubo, settings, int(settings["seed"]))
        backend = match_backend(
            job,
            user_choice=str(settings["backend"]) or None,
            token=str(settings["token"]) or None,
        )
        child_settings: dict[str, object] = {}
        if backend.requires_token:
            child_settings["token"] = settings["token"]
        return [
            ChildRequest(
                type_id=QCP,
                input=serialize_quantum_job(job),
                solver_id=_QCP_SOLVER_BY_BACKEND[backend.name],
                solver_settings=child_settings,
            )
        ]

    def compose(self, input_text, settings, children):
        child = children[0]
        best_bits, best_energy = parse_bitstring_solution(child.solution.result)
        metadata = {"backend": child.solution.metadata.get("backend", "unknown")}
        if "sampleSet" in child.solution.metadata:
            metadata["sampleSet"] = child.solution.metadata["sampleSet"]
        return _solved(
            serialize_bitstring_solution(best_bits, best_energy),
            best_energy,
            **metadata,
        )


class ExhaustiveQuboSolver(Solver):
    descriptor = SolverDescriptor(
        solver_id="qubo.exact.exhaustive",
        name="Exhaustive minimizer",
        description="Enumerates every assignment (up to 24 variables); ties go to the smallest binary value",
        problem_type_id=QUBO,
    )

    def solve(self, input_text, settings):
        from metasolve.qubo_transform import exhaustive_qubo_min

        qubo = parse_qubo(input_text)
        bits, energy_value = exhaustive_qubo_min(qubo)
        return _solved(
            serialize_bitstring_solution("".join(str(b) for b in bits), energy_value),
            energy_value,
        )


class _SimulatorSolverBase(Solver):
    backend_name = ""

    def solve(self, input_text, settings):
        job = parse_quantum_job(input_text)
        samples = run_quantum_job(job, _BACKEND_BY_NAME[self.backend_name])
        best = samples.best
        return _solved(
            serialize_bitstring_solution(
                "".join(str(b) for b in best.bits), best.energy
            ),
            best.energy,
            backend=samples.backend_name,
            sampleSet=_sample_set_json(samples),
        )


class AnnealSimulatorSolver(_SimulatorSolverBase):
    descriptor = SolverDescriptor(
        solver_id="qcp.sim.anneal",
        name="Simulated annealing sampler",
        description="Single-bit-flip Metropolis sweeps under a geometric inverse-temperature schedule",
        problem_type_id=QCP,
    )

    backend_name = "local-sa"


class QaoaSimulatorSolver(_SimulatorSolverBase):
    descriptor = SolverDescriptor(
        solver_id="qcp.sim.qaoa-statevector",
        name="QAOA statevector simulator",
        description="Exact statevector evolution with optimized phase/mixer angles (up to 20 qubits)",
        problem_type_id=QCP,
    )

    backend_name = "local-qaoa-statevector"


class RemoteStubSolver(Solver):
    descriptor = SolverDescriptor(
        solver_id="qcp.remote.stub",
        name="Remote backend stub",
        description="Placeholder for hosted hardware; always reports the backend as unavailable",
        problem_type_id=QCP,
        settings=(
            SettingDescriptor("token", SettingKind.TEXT, ""),
        ),
    )

    def solve(self, input_text, settings):
        token = str(settings["token"])
        if not token:
            raise AuthenticationRequired(
                "remote backend needs a token; select another backend or supply one"
            )
        job = parse_quantum_job(input_text)
        run_quantum_job(job, _BACKEND_BY_NAME["remote-stub"], token=token)
        raise SolverFailure("remote stub unexpectedly produced samples")


ALL_SOLVERS = (
    TwoPhaseClusterSolver,
    KMeansClusterSolver,
    SavingsVrpSolver,
    TwoOptTspSolver,
    HeldKarpTspSolver,
    QuboTransformTspSolver,
    DpKnapsackSolver,
    BranchBoundKnapsackSolver,
    QuantumSamplerQuboSolver,
    ExhaustiveQuboSolver,
    AnnealSimulatorSolver,
    QaoaSimulatorSolver,
    RemoteStubSolver,
)


def build_default_registry() -> SolverRegistry:
    registry = SolverRegistry()
    for problem_type in PROBLEM_TYPES:
        registry.register_problem_type(problem_type)
    for solver_class in ALL_SOLVERS:
        registry.register_solver(solver_class())
    return registry


def build_default_manager(max_workers: int = 8) -> ProblemManager:
    return ProblemManager(build_default_registry(), max_workers=max_workers)
