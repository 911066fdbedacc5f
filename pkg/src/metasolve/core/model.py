"""Problem, solution, and lifecycle state types.

A Problem is a mutable record owned by the ProblemManager; everything else
here is a value object. State changes must go through the manager so the
transition rules stay enforced in one place.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field


class ProblemState(enum.Enum):
    NEEDS_CONFIGURATION = "NEEDS_CONFIGURATION"
    READY_TO_SOLVE = "READY_TO_SOLVE"
    SOLVING = "SOLVING"
    SOLVED = "SOLVED"


# the only transitions a client may ever observe
LEGAL_TRANSITIONS: frozenset[tuple[ProblemState, ProblemState]] = frozenset(
    {
        (ProblemState.NEEDS_CONFIGURATION, ProblemState.READY_TO_SOLVE),
        (ProblemState.READY_TO_SOLVE, ProblemState.NEEDS_CONFIGURATION),
        (ProblemState.READY_TO_SOLVE, ProblemState.SOLVING),
        (ProblemState.SOLVING, ProblemState.SOLVED),
    }
)


class SolutionStatus(enum.Enum):
    COMPUTING = "COMPUTING"
    SOLVED = "SOLVED"
    ERROR = "ERROR"
    INVALID = "INVALID"


TERMINAL_STATUSES: frozenset[SolutionStatus] = frozenset(
    {SolutionStatus.SOLVED, SolutionStatus.ERROR, SolutionStatus.INVALID}
)


@dataclass(frozen=True)
class Solution:
    status: SolutionStatus
    result: str = ""
    objective_value: float | None = None
    metadata: dict[str, str] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if (self.status is SolutionStatus.SOLVED) != bool(self.result):
            raise ValueError("result must be non-empty exactly when status is SOLVED")
        if self.objective_value is not None and self.status is not SolutionStatus.SOLVED:
            raise ValueError("objectiveValue requires status SOLVED")

    @property
    def terminal(self) -> bool:
        return self.status in TERMINAL_STATUSES


@dataclass
class SubRoutineBinding:
    sub_routine_type_id: str
    child_problem_ids: list[str] = field(default_factory=list)


@dataclass
class Problem:
    problem_id: str
    type_id: str
    input: str
    state: ProblemState = ProblemState.NEEDS_CONFIGURATION
    solver_id: str | None = None
    solver_settings: dict[str, object] = field(default_factory=dict)
    solution: Solution | None = None
    sub_problems: list[SubRoutineBinding] = field(default_factory=list)
    parent_id: str | None = None

    def check_invariants(self) -> None:
        """Raise when a record violates the documented field relationships."""
        if self.state is not ProblemState.NEEDS_CONFIGURATION and self.solver_id is None:
            raise ValueError(f"state {self.state.value} requires a solver")
        if self.solution is not None and self.state in (
            ProblemState.NEEDS_CONFIGURATION,
            ProblemState.READY_TO_SOLVE,
        ):
            raise ValueError("a solution may only exist while SOLVING or SOLVED")
        if self.state is ProblemState.SOLVED:
            if self.solution is None or not self.solution.terminal:
                raise ValueError("SOLVED requires a terminal solution")
