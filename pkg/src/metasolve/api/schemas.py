"""Wire documents for the HTTP service.

Field names are camelCase on the wire and frozen: typeId, input, solverId,
solverSettings, state. PATCH bodies reject unknown fields so typos surface
as 400s instead of silently doing nothing.
"""

from __future__ import annotations

from pydantic import BaseModel, ConfigDict

from metasolve.core import Problem


class SolutionDocument(BaseModel):
    status: str
    result: str
    objectiveValue: float | None = None
    metadata: dict[str, str] = {}


class SubRoutineDocument(BaseModel):
    subRoutineTypeId: str
    childProblemIds: list[str]


class ProblemDocument(BaseModel):
    id: str
    typeId: str
    input: str
    state: str
    solverId: str | None = None
    solverSettings: dict[str, object] = {}
    solution: SolutionDocument | None = None
    subProblems: list[SubRoutineDocument] = []


class ProblemSummary(BaseModel):
    id: str
    typeId: str
    state: str


class CreateProblemRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    typeId: str
    input: str = ""


class PatchProblemRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    input: str | None = None
    solverId: str | None = None
    solverSettings: dict[str, object] | None = None
    state: str | None = None

    def wants_solver_change(self) -> bool:
        return "solverId" in self.model_fields_set


class SolverSummary(BaseModel):
    id: str
    name: str
    description: str


class SettingDocument(BaseModel):
    name: str
    kind: str
    default: object = None
    choices: list[str] | None = None
    description: str = ""


class BoundDocument(BaseModel):
    boundType: str
    value: float
    method: str


class BoundComparisonDocument(BaseModel):
    bound: BoundDocument
    solutionValue: float
    absoluteGap: float
    relativeGap: float


def solution_document(problem: Problem) -> SolutionDocument | None:
    solution = problem.solution
    if solution is None:
        return None
    return SolutionDocument(
        status=solution.status.value,
        result=solution.result,
        objectiveValue=solution.objective_value,
        metadata=dict(solution.metadata),
    )


def problem_document(problem: Problem) -> ProblemDocument:
    return ProblemDocument(
        id=problem.problem_id,
        typeId=problem.type_id,
        input=problem.input,
        state=problem.state.value,
        solverId=problem.solver_id,
        solverSettings=dict(problem.solver_settings),
        solution=solution_document(problem),
        subProblems=[
            SubRoutineDocument(
                subRoutineTypeId=binding.sub_routine_type_id,
                childProblemIds=list(binding.child_problem_ids),
            )
            for binding in problem.sub_problems
        ],
    )


def problem_summary(problem: Problem) -> ProblemSummary:
    return ProblemSummary(
        id=problem.problem_id, typeId=problem.type_id, state=problem.state.value
    )
