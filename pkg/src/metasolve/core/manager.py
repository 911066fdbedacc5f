"""The problem store and its state machine.

One store lock serializes every state transition; solver work (solve,
decompose, compose) always runs on executor threads outside the lock, so
polling reads never block on computation. Child completions bubble up
through an idempotent handler that composes the parent exactly once.
"""

from __future__ import annotations

import threading
import uuid
from concurrent.futures import ThreadPoolExecutor
from typing import Sequence

from metasolve.core.descriptors import ChildRequest, Solver
from metasolve.core.errors import (
    IllegalState,
    SolverTypeMismatch,
    UnknownProblem,
)
from metasolve.core.model import (
    LEGAL_TRANSITIONS,
    Problem,
    ProblemState,
    Solution,
    SolutionStatus,
    SubRoutineBinding,
)
from metasolve.core.registry import SolverRegistry
from metasolve.errors import InvalidSolution, MetasolveError


class ProblemManager:
    def __init__(self, registry: SolverRegistry, max_workers: int = 8):
        self.registry = registry
        self._lock = threading.RLock()
        self._problems: dict[str, Problem] = {}
        self._done: dict[str, threading.Event] = {}
        self._composing: set[str] = set()
        self._executor = ThreadPoolExecutor(max_workers=max_workers)
        self._closed = False

    # ------------------------------------------------------------- storage

    def create_problem(self, type_id: str, input_text: str) -> Problem:
        self.registry.problem_type(type_id)
        problem = Problem(problem_id=str(uuid.uuid4()), type_id=type_id, input=input_text)
        with self._lock:
            self._problems[problem.problem_id] = problem
            self._done[problem.problem_id] = threading.Event()
        return problem

    def get(self, problem_id: str) -> Problem:
        with self._lock:
            try:
                return self._problems[problem_id]
            except KeyError:
                raise UnknownProblem(f"no problem with id {problem_id!r}") from None

    def list_problems(self, type_id: str) -> list[Problem]:
        self.registry.problem_type(type_id)
        with self._lock:
            return [p for p in self._problems.values() if p.type_id == type_id]

    # --------------------------------------------------------- transitions

    def update_input(self, problem_id: str, input_text: str) -> Problem:
        """Replace the input; the configuration state is kept as-is."""
        with self._lock:
            problem = self.get(problem_id)
            if problem.state in (ProblemState.SOLVING, ProblemState.SOLVED):
                raise IllegalState(f"cannot change input while {problem.state.value}")
            problem.input = input_text
            return problem

    def assign_solver(
        self, problem_id: str, solver_id: str, settings: dict[str, object] | None = None
    ) -> Problem:
        solver = self.registry.solver(solver_id)
        with self._lock:
            problem = self.get(problem_id)
            if problem.state in (ProblemState.SOLVING, ProblemState.SOLVED):
                raise IllegalState(f"cannot assign a solver while {problem.state.value}")
            if solver.descriptor.problem_type_id != problem.type_id:
                raise SolverTypeMismatch(
                    f"solver {solver_id!r} targets {solver.descriptor.problem_type_id!r}, "
                    f"not {problem.type_id!r}"
                )
            resolved = solver.descriptor.resolve_settings(settings)
            problem.solver_id = solver_id
            problem.solver_settings = resolved
            if problem.state is ProblemState.NEEDS_CONFIGURATION:
                self._set_state(problem, ProblemState.READY_TO_SOLVE)
            return problem

    def clear_solver(self, problem_id: str) -> Problem:
        with self._lock:
            problem = self.get(problem_id)
            if problem.state in (ProblemState.SOLVING, ProblemState.SOLVED):
                raise IllegalState(f"cannot clear the solver while {problem.state.value}")
            problem.solver_id = None
            problem.solver_settings = {}
            if problem.state is ProblemState.READY_TO_SOLVE:
                self._set_state(problem, ProblemState.NEEDS_CONFIGURATION)
            return problem

    def start_solving(self, problem_id: str) -> Problem:
        with self._lock:
            problem = self.get(problem_id)
            if problem.state is not ProblemState.READY_TO_SOLVE:
                raise IllegalState(
                    f"cannot start solving from {problem.state.value}"
                )
            solver = self.registry.solver(problem.solver_id)
            self._set_state(problem, ProblemState.SOLVING)
            problem.solution = Solution(status=SolutionStatus.COMPUTING)
            input_text = problem.input
            settings = dict(problem.solver_settings)
        self._submit(self._execute, problem_id, solver, input_text, settings)
        return problem

    def await_terminal(self, problem_id: str, timeout: float | None = None) -> Problem:
        event = self._done_event(problem_id)
        if not event.wait(timeout):
            raise TimeoutError(f"problem {problem_id} did not finish within {timeout}s")
        return self.get(problem_id)

    def close(self) -> None:
        with self._lock:
            self._closed = True
        self._executor.shutdown(wait=True)

    def _submit(self, fn, *args) -> None:
        # late completions during shutdown must not crash worker threads
        with self._lock:
            if self._closed:
                return
        try:
            self._executor.submit(fn, *args)
        except RuntimeError:
            pass

    # ------------------------------------------------------------- workers

    def _execute(
        self, problem_id: str, solver: Solver, input_text: str, settings: dict[str, object]
    ) -> None:
        if solver.decomposes:
            self._execute_decomposition(problem_id, solver, input_text, settings)
        else:
            try:
                solution = solver.solve(input_text, settings)
            except Exception as exc:  # noqa: BLE001 - must reach a terminal state
                solution = _failure_solution(exc)
            self._finish(problem_id, solution)

    def _execute_decomposition(
        self, problem_id: str, solver: Solver, input_text: str, settings: dict[str, object]
    ) -> None:
        try:
            requests = solver.decompose(input_text, settings)
        except Exception as exc:  # noqa: BLE001
            self._finish(problem_id, _failure_solution(exc))
            return
        declared = set(solver.descriptor.sub_routines)
        undeclared = next((r for r in requests if r.type_id not in declared), None)
        if undeclared is not None:
            self._finish(
                problem_id,
                _error_solution(
                    f"decomposition produced an undeclared child type "
                    f"{undeclared.type_id!r}"
                ),
            )
            return
        created: list[tuple[str, ChildRequest]] = []
        with self._lock:
            problem = self._problems[problem_id]
            bindings: dict[str, SubRoutineBinding] = {}
            for type_id in solver.descriptor.sub_routines:
                binding = SubRoutineBinding(sub_routine_type_id=type_id)
                bindings[type_id] = binding
                problem.sub_problems.append(binding)
            for request in requests:
                child = Problem(
                    problem_id=str(uuid.uuid4()),
                    type_id=request.type_id,
                    input=request.input,
                    parent_id=problem_id,
                )
                self._problems[child.problem_id] = child
                self._done[child.problem_id] = threading.Event()
                bindings[request.type_id].child_problem_ids.append(child.problem_id)
                created.append((child.problem_id, request))
        # all bindings exist before any child starts, so a fast child can
        # never complete into an unbound parent or hide a pending sibling
        for child_id, request in created:
            if request.solver_id is None:
                continue
            try:
                self.assign_solver(child_id, request.solver_id, request.solver_settings)
                self.start_solving(child_id)
            except MetasolveError as exc:
                self._finish(
                    problem_id,
                    _error_solution(f"could not configure child {child_id}: {exc}"),
                )
                return
        if not created:
            # nothing to wait for; compose immediately over zero children
            self._schedule_compose(problem_id)
            return
        self.resolve_subproblem_completion(problem_id)

    def resolve_subproblem_completion(self, parent_id: str) -> Problem:
        """Advance a SOLVING parent whose children may have finished.

        Safe to call at any time and any number of times: it only acts when
        the parent is still SOLVING, fails the parent on the first child
        that terminated unsuccessfully, and schedules composition exactly
        once when every child has solved.
        """
        notify_grandparent: str | None = None
        with self._lock:
            parent = self.get(parent_id)
            if parent.state is not ProblemState.SOLVING or parent_id in self._composing:
                return parent
            child_ids = [
                child_id
                for binding in parent.sub_problems
                for child_id in binding.child_problem_ids
            ]
            children = [self._problems[c] for c in child_ids]
            for child in children:
                status = child.solution.status if child.solution else None
                if status in (SolutionStatus.ERROR, SolutionStatus.INVALID):
                    self._finish_locked(
                        parent,
                        _error_solution(
                            f"child problem failed with status {status.value}",
                            extra={
                                "failedChild": child.problem_id,
                                "failedChildStatus": status.value,
                                "failedChildError": (
                                    child.solution.metadata.get("error", "")
                                    if child.solution
                                    else ""
                                ),
                            },
                        ),
                    )
                    notify_grandparent = parent.parent_id
                    break
            else:
                if children and all(
                    c.state is ProblemState.SOLVED
                    and c.solution is not None
                    and c.solution.status is SolutionStatus.SOLVED
                    for c in children
                ):
                    self._composing.add(parent_id)
                    self._submit(self._compose, parent_id)
        if notify_grandparent:
            self.resolve_subproblem_completion(notify_grandparent)
        return self.get(parent_id)

    def _schedule_compose(self, parent_id: str) -> None:
        with self._lock:
            if parent_id not in self._composing:
                self._composing.add(parent_id)
                self._submit(self._compose, parent_id)

    def _compose(self, parent_id: str) -> None:
        with self._lock:
            parent = self._problems[parent_id]
            solver = self.registry.solver(parent.solver_id)
            input_text = parent.input
            settings = dict(parent.solver_settings)
            children: Sequence[Problem] = [
                self._problems[child_id]
                for binding in parent.sub_problems
                for child_id in binding.child_problem_ids
            ]
        try:
            solution = solver.compose(input_text, settings, children)
        except Exception as exc:  # noqa: BLE001
            solution = _failure_solution(exc)
        with self._lock:
            # discard and finish atomically so no resolve call can slip in
            # between and schedule a second composition
            problem = self._problems[parent_id]
            self._composing.discard(parent_id)
            notify = self._finish_locked(problem, solution)
        if notify:
            self.resolve_subproblem_completion(notify)

    def _finish(self, problem_id: str, solution: Solution) -> None:
        with self._lock:
            problem = self._problems[problem_id]
            parent_id = self._finish_locked(problem, solution)
        if parent_id:
            self.resolve_subproblem_completion(parent_id)

    def _finish_locked(self, problem: Problem, solution: Solution) -> str | None:
        """Store a terminal solution and flip to SOLVED; returns the parent."""
        if problem.state is ProblemState.SOLVED:
            return None
        problem.solution = solution
        self._set_state(problem, ProblemState.SOLVED)
        self._done[problem.problem_id].set()
        return problem.parent_id

    def _set_state(self, problem: Problem, new_state: ProblemState) -> None:
        if problem.state is new_state:
            return
        if (problem.state, new_state) not in LEGAL_TRANSITIONS:
            raise IllegalState(
                f"illegal transition {problem.state.value} -> {new_state.value}"
            )
        problem.state = new_state

    def _done_event(self, problem_id: str) -> threading.Event:
        with self._lock:
            if problem_id not in self._done:
                raise UnknownProblem(f"no problem with id {problem_id!r}")
            return self._done[problem_id]


def _error_solution(message: str, extra: dict[str, str] | None = None) -> Solution:
    metadata = {"error": message}
    if extra:
        metadata.update(extra)
    return Solution(status=SolutionStatus.ERROR, metadata=metadata)


def _failure_solution(exc: Exception) -> Solution:
    status = (
        SolutionStatus.INVALID if isinstance(exc, InvalidSolution) else SolutionStatus.ERROR
    )
    return Solution(
        status=status,
        metadata={"error": str(exc), "errorType": type(exc).__name__},
    )
