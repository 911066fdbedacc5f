"""Pipeline drivers for the benchmark harness.

Both pipelines cluster with the two-phase strategy. CLASSICAL routes each
cluster with an exact tour solver (a 2-opt variant is selectable), HYBRID
routes through the binary-quadratic transformation and the annealing
sampler. Each run is one full lifecycle journey, either against an
in-process manager or an HTTP server, so the benchmark exercises the same
code paths a client would.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass

from metasolve.classical import validate_routes
from metasolve.decomposition import clustered_optimum, two_phase_cluster
from metasolve.classical import vrp_brute_force
from metasolve.core import ProblemManager, SolutionStatus
from metasolve.formats import VrpInstance, parse_routes, serialize_vrp

CLASSICAL = "classical"
HYBRID = "hybrid"
PIPELINES = (CLASSICAL, HYBRID)

TSP_SOLVERS = {"exact": "tsp.exact.held-karp", "two-opt": "tsp.classical.two-opt"}

POLL_INTERVAL_S = 0.02


@dataclass(frozen=True)
class BenchmarkRun:
    instance_name: str
    pipeline: str
    run_index: int
    route_length: float
    valid: bool
    wall_time_ms: int
    seed: int


def pipeline_settings(pipeline: str, run_seed: int, tsp_solver: str = "exact") -> dict:
    if pipeline == CLASSICAL:
        return {"childSolver": TSP_SOLVERS[tsp_solver]}
    if pipeline == HYBRID:
        sampler = json.dumps({"kind": "anneal", "seed": run_seed})
        transform = json.dumps(
            {"childSolver": "qubo.sampler.quantum", "childSettings": sampler}
        )
        return {"childSolver": "tsp.transform.qubo", "childSettings": transform}
    raise ValueError(f"unknown pipeline '{pipeline}'")


class EmbeddedDriver:
    """Runs journeys directly against an in-process manager."""

    def __init__(self, manager: ProblemManager, timeout_s: float = 300.0):
        self.manager = manager
        self.timeout_s = timeout_s

    def solve(self, input_text: str, solver_id: str, settings: dict):
        problem = self.manager.create_problem("cluster-vrp", input_text)
        self.manager.assign_solver(problem.problem_id, solver_id, settings)
        self.manager.start_solving(problem.problem_id)
        done = self.manager.await_terminal(problem.problem_id, timeout=self.timeout_s)
        solution = done.solution
        return solution.status, solution.result, solution.objective_value


class HttpDriver:
    """Runs journeys against a live server, polling for completion."""

    def __init__(self, base_url: str, timeout_s: float = 300.0):
        import httpx

        self.client = httpx.Client(base_url=base_url.rstrip("/"), timeout=30.0)
        self.timeout_s = timeout_s

    def solve(self, input_text: str, solver_id: str, settings: dict):
        created = self.client.post(
            "/problems/cluster-vrp",
            json={"typeId": "cluster-vrp", "input": input_text},
        )
        created.raise_for_status()
        problem_id = created.json()["id"]
        patched = self.client.patch(
            f"/problems/cluster-vrp/{problem_id}",
            json={"solverId": solver_id, "solverSettings": settings, "state": "SOLVING"},
        )
        patched.raise_for_status()
        deadline = time.monotonic() + self.timeout_s
        while time.monotonic() < deadline:
            doc = self.client.get(f"/problems/cluster-vrp/{problem_id}").json()
            if doc["state"] == "SOLVED":
                solution = doc["solution"]
                return (
                    SolutionStatus(solution["status"]),
                    solution["result"],
                    solution["objectiveValue"],
                )
            time.sleep(POLL_INTERVAL_S)
        raise TimeoutError(f"problem {problem_id} did not finish in {self.timeout_s}s")

    def close(self) -> None:
        self.client.close()


def run_seed_for(master_seed: int, instance_index: int, run_index: int) -> int:
    # readable and collision-free for <100 instances and <100 runs each
    return master_seed * 10_000 + instance_index * 100 + run_index


def run_pipeline(
    instance: VrpInstance,
    pipeline: str,
    runs: int,
    master_seed: int,
    driver,
    instance_index: int = 0,
    tsp_solver: str = "exact",
) -> list[BenchmarkRun]:
    input_text = serialize_vrp(instance)
    results = []
    for run_index in range(runs):
        seed = run_seed_for(master_seed, instance_index, run_index)
        settings = pipeline_settings(pipeline, seed, tsp_solver)
        started = time.perf_counter()
        try:
            status, result, objective = driver.solve(
                input_text, "vrp.clusterer.two-phase", settings
            )
        except Exception:  # noqa: BLE001 - a crashed journey is an invalid run
            status, result, objective = SolutionStatus.ERROR, "", None
        elapsed_ms = int((time.perf_counter() - started) * 1000)
        valid = False
        length = float("nan")
        if status is SolutionStatus.SOLVED and objective is not None:
            report = validate_routes(instance, parse_routes(result))
            valid = not report.violations
            length = float(objective)
        results.append(
            BenchmarkRun(
                instance_name=instance.name,
                pipeline=pipeline,
                run_index=run_index,
                route_length=length,
                valid=valid,
                wall_time_ms=elapsed_ms,
                seed=seed,
            )
        )
    return results


def compute_baselines(instance: VrpInstance) -> dict[str, float]:
    without = vrp_brute_force(instance).total_length
    with_clustering = clustered_optimum(instance, two_phase_cluster(instance)).total_length
    return {"withoutClustering": without, "withClustering": with_clustering}
