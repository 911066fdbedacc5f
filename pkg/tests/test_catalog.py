import json
import threading

import pytest

from metasolve.catalog import (
    ALL_SOLVERS,
    PROBLEM_TYPES,
    QuantumSamplerQuboSolver,
    QuboTransformTspSolver,
    build_default_manager,
    build_default_registry,
)
from metasolve.core import ProblemState, SolutionStatus
from metasolve.classical import validate_routes
from metasolve.decomposition import clustered_optimum, two_phase_cluster
from metasolve.formats import (
    parse_bitstring_solution,
    parse_routes,
    parse_vrp,
    serialize_vrp,
)
from metasolve.quantum import JobKind, parse_quantum_job, verify_sample_energies


def vrp_text(coords, demands, capacity, vehicles):
    lines = [
        "NAME: fixture",
        "TYPE: CVRP",
        f"DIMENSION: {len(coords)}",
        "EDGE_WEIGHT_TYPE: EUC_2D",
        f"CAPACITY: {capacity}",
        f"VEHICLES: {vehicles}",
        "NODE_COORD_SECTION",
    ]
    for i, (x, y) in enumerate(coords, start=1):
        lines.append(f"{i} {x} {y}")
    lines.append("DEMAND_SECTION")
    for i, d in enumerate(demands, start=1):
        lines.append(f"{i} {d}")
    lines.extend(["DEPOT_SECTION", "1", "-1", "EOF"])
    return "\n".join(lines) + "\n"


FOUR_CUSTOMERS = vrp_text(
    [(0, 0), (1, 0), (2, 0), (0, 1), (0, 2)], [0, 1, 1, 1, 1], 2, 2
)

TSP_SQUARE = (
    "NAME: square\nTYPE: TSP\nDIMENSION: 4\nEDGE_WEIGHT_TYPE: EUC_2D\n"
    "NODE_COORD_SECTION\n1 0 0\n2 1 0\n3 1 1\n4 0 1\nEOF\n"
)

KNAPSACK_THREE = "CAPACITY 5\nITEM 1 2 3.0\nITEM 2 3 4.0\nITEM 3 4 5.0\n"

TWO_BIT_QUBO = "n 2\n0 0 -1\n1 1 -1\n"


@pytest.fixture(scope="module")
def manager():
    mgr = build_default_manager()
    yield mgr
    mgr.close()


def run(manager, type_id, input_text, solver_id, settings=None, timeout=60):
    problem = manager.create_problem(type_id, input_text)
    manager.assign_solver(problem.problem_id, solver_id, settings or {})
    manager.start_solving(problem.problem_id)
    return manager.await_terminal(problem.problem_id, timeout=timeout)


class TestCatalogShape:
    def test_problem_types(self):
        registry = build_default_registry()
        by_id = {t.type_id: t for t in registry.problem_types()}
        assert set(by_id) == {
            "cluster-vrp",
            "tsp",
            "qubo",
            "knapsack",
            "quantum-circuit-processing",
        }
        assert by_id["knapsack"].direction == "maximize"
        for type_id in set(by_id) - {"knapsack"}:
            assert by_id[type_id].direction == "minimize"

    def test_solver_ids_frozen(self):
        registry = build_default_registry()
        listed = {
            t.type_id: [d.solver_id for d in registry.solvers_for(t.type_id)]
            for t in registry.problem_types()
        }
        assert listed == {
            "cluster-vrp": [
                "vrp.clusterer.two-phase",
                "vrp.clusterer.k-means",
                "vrp.classical.savings",
            ],
            "tsp": [
                "tsp.classical.two-opt",
                "tsp.exact.held-karp",
                "tsp.transform.qubo",
            ],
            "knapsack": [
                "knapsack.classical.dp",
                "knapsack.classical.branch-bound",
            ],
            "qubo": ["qubo.sampler.quantum", "qubo.exact.exhaustive"],
            "quantum-circuit-processing": [
                "qcp.sim.anneal",
                "qcp.sim.qaoa-statevector",
                "qcp.remote.stub",
            ],
        }
        assert len(ALL_SOLVERS) == 13
        assert len(PROBLEM_TYPES) == 5

    def test_declared_subroutines(self):
        registry = build_default_registry()
        expectation = {
            "vrp.clusterer.two-phase": ("tsp",),
            "vrp.clusterer.k-means": ("tsp",),
            "tsp.transform.qubo": ("qubo",),
            "qubo.sampler.quantum": ("quantum-circuit-processing",),
        }
        for solver_id, subs in expectation.items():
            assert registry.solver(solver_id).descriptor.sub_routines == subs
        for solver_id in (
            "vrp.classical.savings",
            "tsp.classical.two-opt",
            "tsp.exact.held-karp",
            "knapsack.classical.dp",
            "qubo.exact.exhaustive",
            "qcp.sim.anneal",
        ):
            assert registry.solver(solver_id).descriptor.sub_routines == ()


class TestClassicalAdapters:
    def test_two_opt_square(self, manager):
        done = run(manager, "tsp", TSP_SQUARE, "tsp.classical.two-opt")
        assert done.solution.status is SolutionStatus.SOLVED
        assert done.solution.objective_value == pytest.approx(4.0, rel=1e-12)

    def test_held_karp_square(self, manager):
        done = run(manager, "tsp", TSP_SQUARE, "tsp.exact.held-karp")
        assert done.solution.objective_value == pytest.approx(4.0, rel=1e-12)
        order = parse_routes(done.solution.result).routes[0]
        assert sorted(order) == [1, 2, 3, 4]

    def test_knapsack_adapters_agree(self, manager):
        dp = run(manager, "knapsack", KNAPSACK_THREE, "knapsack.classical.dp")
        bb = run(manager, "knapsack", KNAPSACK_THREE, "knapsack.classical.branch-bound")
        assert dp.solution.objective_value == 7.0
        assert bb.solution.objective_value == 7.0

    def test_savings_produces_valid_routes(self, manager):
        done = run(manager, "cluster-vrp", FOUR_CUSTOMERS, "vrp.classical.savings")
        assert done.solution.status is SolutionStatus.SOLVED
        instance = parse_vrp(FOUR_CUSTOMERS)
        report = validate_routes(instance, parse_routes(done.solution.result))
        assert not report.violations

    def test_exhaustive_qubo_adapter(self, manager):
        done = run(manager, "qubo", TWO_BIT_QUBO, "qubo.exact.exhaustive")
        bits, energy_value = parse_bitstring_solution(done.solution.result)
        assert (bits, energy_value) == ("11", -2.0)
        assert done.solution.objective_value == -2.0


class TestClusteringPipelines:
    def test_classical_pipeline_matches_clustered_optimum(self, manager):
        done = run(
            manager,
            "cluster-vrp",
            FOUR_CUSTOMERS,
            "vrp.clusterer.two-phase",
            {"childSolver": "tsp.exact.held-karp"},
        )
        assert done.solution.status is SolutionStatus.SOLVED
        instance = parse_vrp(FOUR_CUSTOMERS)
        baseline = clustered_optimum(instance, two_phase_cluster(instance))
        assert done.solution.objective_value == pytest.approx(
            baseline.total_length, rel=1e-9
        )
        report = validate_routes(instance, parse_routes(done.solution.result))
        assert not report.violations

    def test_child_problems_are_tsp_instances(self, manager):
        problem = manager.create_problem("cluster-vrp", FOUR_CUSTOMERS)
        manager.assign_solver(
            problem.problem_id,
            "vrp.clusterer.two-phase",
            {"childSolver": "tsp.exact.held-karp"},
        )
        manager.start_solving(problem.problem_id)
        done = manager.await_terminal(problem.problem_id, timeout=30)
        assert len(done.sub_problems) == 1
        binding = done.sub_problems[0]
        assert binding.sub_routine_type_id == "tsp"
        assert len(binding.child_problem_ids) == 2
        for child_id in binding.child_problem_ids:
            child = manager.get(child_id)
            assert child.solver_id == "tsp.exact.held-karp"
            assert "TYPE: TSP" in child.input

    def test_kmeans_pipeline(self, manager):
        separated = vrp_text(
            [(0, 0), (10, 0), (10, 1), (11, 0), (-10, 0), (-10, 1), (-11, 0)],
            [0, 1, 1, 1, 1, 1, 1],
            3,
            2,
        )
        done = run(
            manager,
            "cluster-vrp",
            separated,
            "vrp.clusterer.k-means",
            {"childSolver": "tsp.classical.two-opt", "seed": 5},
        )
        assert done.solution.status is SolutionStatus.SOLVED
        instance = parse_vrp(separated)
        report = validate_routes(instance, parse_routes(done.solution.result))
        assert not report.violations

    def test_interactive_children_complete_after_configuration(self, manager):
        problem = manager.create_problem("cluster-vrp", FOUR_CUSTOMERS)
        manager.assign_solver(problem.problem_id, "vrp.clusterer.two-phase")
        manager.start_solving(problem.problem_id)
        for _ in range(200):
            snapshot = manager.get(problem.problem_id)
            if snapshot.sub_problems and len(snapshot.sub_problems[0].child_problem_ids) == 2:
                break
            threading.Event().wait(0.02)
        binding = manager.get(problem.problem_id).sub_problems[0]
        assert manager.get(problem.problem_id).state is ProblemState.SOLVING
        for child_id in binding.child_problem_ids:
            assert manager.get(child_id).state is ProblemState.NEEDS_CONFIGURATION
            manager.assign_solver(child_id, "tsp.exact.held-karp")
            manager.start_solving(child_id)
        done = manager.await_terminal(problem.problem_id, timeout=30)
        assert done.solution.status is SolutionStatus.SOLVED

    def test_bad_child_settings_json(self, manager):
        done = run(
            manager,
            "cluster-vrp",
            FOUR_CUSTOMERS,
            "vrp.clusterer.two-phase",
            {"childSolver": "tsp.exact.held-karp", "childSettings": "not json"},
        )
        assert done.solution.status is SolutionStatus.ERROR

    def test_unparseable_instance_fails_cleanly(self, manager):
        done = run(
            manager, "cluster-vrp", "garbage", "vrp.classical.savings", timeout=10
        )
        assert done.solution.status is SolutionStatus.ERROR


class TestQuantumAdapters:
    def test_anneal_sampler_pipeline(self, manager):
        done = run(
            manager,
            "qubo",
            TWO_BIT_QUBO,
            "qubo.sampler.quantum",
            {"kind": "anneal", "seed": 1, "sweeps": 200, "restarts": 4},
        )
        assert done.solution.status is SolutionStatus.SOLVED
        assert done.solution.objective_value == -2.0
        doc = json.loads(done.solution.metadata["sampleSet"])
        assert doc["backend"] == "local-sa"
        assert len(doc["samples"]) == 4

    def test_sampler_assigns_matching_child(self, manager):
        for kind, expected_solver, expected_kind in (
            ("anneal", "qcp.sim.anneal", JobKind.ANNEAL),
            ("qaoa", "qcp.sim.qaoa-statevector", JobKind.QAOA),
        ):
            done = run(
                manager,
                "qubo",
                TWO_BIT_QUBO,
                "qubo.sampler.quantum",
                {"kind": kind, "shots": 50, "sweeps": 100, "restarts": 2,
                 "qaoaIterations": 30},
            )
            child_id = done.sub_problems[0].child_problem_ids[0]
            child = manager.get(child_id)
            assert child.solver_id == expected_solver
            job = parse_quantum_job(child.input)
            assert job.kind is expected_kind
            assert job.qubo.n == 2

    def test_qcp_direct_anneal(self, manager):
        sampler = manager.create_problem("qubo", TWO_BIT_QUBO)
        manager.assign_solver(
            sampler.problem_id, "qubo.sampler.quantum", {"sweeps": 100, "restarts": 2}
        )
        manager.start_solving(sampler.problem_id)
        done = manager.await_terminal(sampler.problem_id, timeout=30)
        child = manager.get(done.sub_problems[0].child_problem_ids[0])
        # re-run the same job text directly on the leaf solver
        direct = run(manager, "quantum-circuit-processing", child.input, "qcp.sim.anneal")
        assert direct.solution.result == child.solution.result

    def test_qcp_kind_backend_mismatch(self, manager):
        sampler = manager.create_problem("qubo", TWO_BIT_QUBO)
        manager.assign_solver(
            sampler.problem_id, "qubo.sampler.quantum",
            {"kind": "qaoa", "shots": 50, "qaoaIterations": 20},
        )
        manager.start_solving(sampler.problem_id)
        done = manager.await_terminal(sampler.problem_id, timeout=30)
        child = manager.get(done.sub_problems[0].child_problem_ids[0])
        mismatched = run(
            manager, "quantum-circuit-processing", child.input, "qcp.sim.anneal",
            timeout=10,
        )
        assert mismatched.solution.status is SolutionStatus.ERROR

    def test_remote_backend_needs_token(self, manager):
        done = run(
            manager,
            "qubo",
            TWO_BIT_QUBO,
            "qubo.sampler.quantum",
            {"backend": "remote-stub"},
            timeout=10,
        )
        assert done.solution.status is SolutionStatus.ERROR
        assert "token" in done.solution.metadata["error"]

    def test_remote_backend_with_token_reports_unavailable(self, manager):
        done = run(
            manager,
            "qubo",
            TWO_BIT_QUBO,
            "qubo.sampler.quantum",
            {"backend": "remote-stub", "token": "secret"},
            timeout=10,
        )
        assert done.solution.status is SolutionStatus.ERROR
        failed_child = done.solution.metadata["failedChild"]
        child = manager.get(failed_child)
        assert "out of scope" in child.solution.metadata["error"]

    def test_sample_energies_recompute(self, manager):
        done = run(
            manager,
            "qubo",
            TWO_BIT_QUBO,
            "qubo.sampler.quantum",
            {"sweeps": 100, "restarts": 3, "seed": 9},
        )
        child = manager.get(done.sub_problems[0].child_problem_ids[0])
        job = parse_quantum_job(child.input)
        from metasolve.quantum import Sample, make_sample_set

        doc = json.loads(done.solution.metadata["sampleSet"])
        samples = make_sample_set(
            [
                Sample(tuple(int(b) for b in bits), energy_value, mult)
                for bits, energy_value, mult in doc["samples"]
            ],
            backend_name=doc["backend"],
        )
        verify_sample_energies(samples, job.qubo)


class TestQuboTransformPipeline:
    def test_exact_child_recovers_optimal_tour(self, manager):
        done = run(
            manager,
            "tsp",
            TSP_SQUARE,
            "tsp.transform.qubo",
            {"childSolver": "qubo.exact.exhaustive"},
            timeout=120,
        )
        assert done.solution.status is SolutionStatus.SOLVED
        assert done.solution.objective_value == 4.0

    def test_sampler_child_recovers_valid_tour(self, manager):
        nested = json.dumps({"kind": "anneal", "seed": 11})
        done = run(
            manager,
            "tsp",
            TSP_SQUARE,
            "tsp.transform.qubo",
            {"childSolver": "qubo.sampler.quantum", "childSettings": nested},
            timeout=120,
        )
        assert done.solution.status is SolutionStatus.SOLVED
        order = parse_routes(done.solution.result).routes[0]
        assert sorted(order) == [1, 2, 3, 4]

    def test_resampler_only_for_sampler_children(self, manager):
        class FakeChild:
            solver_id = "qubo.exact.exhaustive"

        assert QuboTransformTspSolver._resampler(FakeChild()) is None

    def test_resampler_produces_verifiable_samples(self, manager):
        defaults = QuantumSamplerQuboSolver.descriptor.resolve_settings(
            {"sweeps": 100, "restarts": 2}
        )

        class FakeChild:
            solver_id = "qubo.sampler.quantum"
            input = TWO_BIT_QUBO
            solver_settings = defaults

        resample = QuboTransformTspSolver._resampler(FakeChild())
        first = resample(1)
        second = resample(1)
        assert first.samples == second.samples
        job = parse_quantum_job("KIND ANNEAL\nSHOTS 200\nSEED 0\nQUBO\n" + TWO_BIT_QUBO)
        verify_sample_energies(first, job.qubo)
        # a different attempt uses a different seed
        third = resample(2)
        assert third.backend_name == first.backend_name

    def test_hybrid_vrp_chain(self, manager):
        nested = json.dumps(
            {
                "childSolver": "qubo.sampler.quantum",
                "childSettings": json.dumps({"kind": "anneal", "seed": 3}),
            }
        )
        done = run(
            manager,
            "cluster-vrp",
            FOUR_CUSTOMERS,
            "vrp.clusterer.two-phase",
            {"childSolver": "tsp.transform.qubo", "childSettings": nested},
            timeout=300,
        )
        assert done.solution.status is SolutionStatus.SOLVED
        instance = parse_vrp(FOUR_CUSTOMERS)
        report = validate_routes(instance, parse_routes(done.solution.result))
        assert not report.violations


class TestRoundTrips:
    def test_vrp_fixture_parses(self):
        instance = parse_vrp(FOUR_CUSTOMERS)
        assert serialize_vrp(instance) == serialize_vrp(parse_vrp(serialize_vrp(instance)))
