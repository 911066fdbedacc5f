"""Problem-type and solver registration."""

from __future__ import annotations

from dataclasses import dataclass

from metasolve.core.descriptors import Solver, SolverDescriptor
from metasolve.core.errors import UnknownProblemType, UnknownSolver


@dataclass(frozen=True)
class ProblemType:
    type_id: str
    description: str
    # "minimize" or "maximize"; bound comparison needs the direction
    direction: str = "minimize"

    def __post_init__(self) -> None:
        if self.direction not in ("minimize", "maximize"):
            raise ValueError(f"direction must be minimize or maximize, got {self.direction!r}")


class SolverRegistry:
    def __init__(self) -> None:
        self._types: dict[str, ProblemType] = {}
        self._solvers: dict[str, Solver] = {}
        self._by_type: dict[str, list[str]] = {}

    def register_problem_type(self, problem_type: ProblemType) -> None:
        if problem_type.type_id in self._types:
            raise ValueError(f"problem type {problem_type.type_id!r} already registered")
        self._types[problem_type.type_id] = problem_type
        self._by_type[problem_type.type_id] = []

    def register_solver(self, solver: Solver) -> None:
        descriptor = solver.descriptor
        if descriptor.problem_type_id not in self._types:
            raise UnknownProblemType(
                f"solver {descriptor.solver_id!r} targets unregistered type "
                f"{descriptor.problem_type_id!r}"
            )
        for sub_type in descriptor.sub_routines:
            if sub_type not in self._types:
                raise UnknownProblemType(
                    f"solver {descriptor.solver_id!r} declares unregistered "
                    f"subroutine type {sub_type!r}"
                )
        if descriptor.solver_id in self._solvers:
            raise ValueError(f"solver {descriptor.solver_id!r} already registered")
        self._solvers[descriptor.solver_id] = solver
        self._by_type[descriptor.problem_type_id].append(descriptor.solver_id)

    def problem_type(self, type_id: str) -> ProblemType:
        try:
            return self._types[type_id]
        except KeyError:
            raise UnknownProblemType(f"unknown problem type {type_id!r}") from None

    def problem_types(self) -> tuple[ProblemType, ...]:
        return tuple(self._types.values())

    def has_type(self, type_id: str) -> bool:
        return type_id in self._types

    def solver(self, solver_id: str) -> Solver:
        try:
            return self._solvers[solver_id]
        except KeyError:
            raise UnknownSolver(f"unknown solver {solver_id!r}") from None

    def solvers_for(self, type_id: str) -> tuple[SolverDescriptor, ...]:
        """Descriptors for one problem type, in registration order."""
        if type_id not in self._types:
            raise UnknownProblemType(f"unknown problem type {type_id!r}")
        return tuple(self._solvers[sid].descriptor for sid in self._by_type[type_id])
