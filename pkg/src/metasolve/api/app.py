"""HTTP service over the problem lifecycle.

Nine routes: problem listing/creation/reading/patching, bound reporting and
comparison, and solver discovery (list, sub-routines, settings). Solving is
asynchronous: PATCHing state to SOLVING returns immediately and clients poll
the problem document. The machine-readable API description is served at
/openapi; interactive doc pages are disabled.
"""

from __future__ import annotations

import os
from contextlib import asynccontextmanager

import uvicorn
from fastapi import FastAPI, HTTPException, Request, Response
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from metasolve import bounds
from metasolve.api.schemas import (
    BoundComparisonDocument,
    BoundDocument,
    CreateProblemRequest,
    PatchProblemRequest,
    ProblemDocument,
    ProblemSummary,
    SettingDocument,
    SolverSummary,
    problem_document,
    problem_summary,
)
from metasolve.catalog import build_default_manager
from metasolve.core import (
    IllegalState,
    InvalidSetting,
    ProblemManager,
    ProblemState,
    SolutionStatus,
    SolverTypeMismatch,
    UnknownProblem,
    UnknownProblemType,
    UnknownSolver,
)
from metasolve.errors import ParseError

DEFAULT_PORT = 8080


def create_app(manager: ProblemManager | None = None) -> FastAPI:
    owned = manager if manager is not None else build_default_manager()

    @asynccontextmanager
    async def lifespan(app: FastAPI):
        yield
        owned.close()

    app = FastAPI(
        title="metasolve",
        lifespan=lifespan,
        openapi_url="/openapi",
        docs_url=None,
        redoc_url=None,
    )
    app.state.manager = owned
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    registry = owned.registry

    @app.exception_handler(RequestValidationError)
    async def handle_body_errors(request: Request, exc: RequestValidationError):
        return JSONResponse(status_code=400, content={"detail": exc.errors()})

    @app.exception_handler(UnknownProblem)
    @app.exception_handler(UnknownProblemType)
    async def handle_missing(request: Request, exc: Exception):
        return JSONResponse(status_code=404, content={"detail": str(exc)})

    @app.exception_handler(IllegalState)
    async def handle_illegal_state(request: Request, exc: IllegalState):
        return JSONResponse(status_code=409, content={"detail": str(exc)})

    @app.exception_handler(InvalidSetting)
    @app.exception_handler(SolverTypeMismatch)
    @app.exception_handler(UnknownSolver)
    async def handle_bad_configuration(request: Request, exc: Exception):
        return JSONResponse(status_code=400, content={"detail": str(exc)})

    def require_type(problem_type: str) -> None:
        if not registry.has_type(problem_type):
            raise UnknownProblemType(f"unknown problem type '{problem_type}'")

    def scoped_problem(problem_type: str, problem_id: str):
        require_type(problem_type)
        problem = owned.get(problem_id)
        if problem.type_id != problem_type:
            raise UnknownProblem(
                f"problem '{problem_id}' is not of type '{problem_type}'"
            )
        return problem

    @app.get("/problems/{problemType}", response_model=list[ProblemSummary])
    def list_problems(problemType: str):
        require_type(problemType)
        return [problem_summary(p) for p in owned.list_problems(problemType)]

    @app.post(
        "/problems/{problemType}", response_model=ProblemDocument, status_code=201
    )
    def create_problem(
        problemType: str, body: CreateProblemRequest, response: Response
    ):
        require_type(problemType)
        if body.typeId != problemType:
            raise HTTPException(
                status_code=400,
                detail=f"body typeId '{body.typeId}' does not match path '{problemType}'",
            )
        problem = owned.create_problem(problemType, body.input)
        response.headers["Location"] = f"/problems/{problemType}/{problem.problem_id}"
        return problem_document(problem)

    @app.get(
        "/problems/{problemType}/{problemId}", response_model=ProblemDocument
    )
    def get_problem(problemType: str, problemId: str):
        return problem_document(scoped_problem(problemType, problemId))

    @app.patch(
        "/problems/{problemType}/{problemId}", response_model=ProblemDocument
    )
    def patch_problem(problemType: str, problemId: str, body: PatchProblemRequest):
        problem = scoped_problem(problemType, problemId)
        if problem.state in (ProblemState.SOLVING, ProblemState.SOLVED):
            raise IllegalState(
                f"problem in state {problem.state.value} can no longer be patched"
            )
        if body.state is not None and body.state != "SOLVING":
            raise HTTPException(
                status_code=400,
                detail=f"state may only be set to 'SOLVING', not '{body.state}'",
            )
        # Validate the solver choice before touching anything so a rejected
        # request leaves the problem exactly as it was.
        if body.wants_solver_change() and body.solverId is not None:
            descriptor = registry.solver(body.solverId).descriptor
            if descriptor.problem_type_id != problemType:
                raise SolverTypeMismatch(
                    f"solver '{body.solverId}' targets '{descriptor.problem_type_id}'"
                )
            descriptor.resolve_settings(body.solverSettings or {})
        if body.input is not None:
            owned.update_input(problemId, body.input)
        if body.wants_solver_change():
            if body.solverId is None:
                owned.clear_solver(problemId)
            else:
                owned.assign_solver(
                    problemId, body.solverId, body.solverSettings or {}
                )
        elif body.solverSettings is not None:
            current = owned.get(problemId)
            if current.solver_id is None:
                raise HTTPException(
                    status_code=400,
                    detail="solverSettings requires a solver to be assigned",
                )
            owned.assign_solver(problemId, current.solver_id, body.solverSettings)
        if body.state == "SOLVING":
            owned.start_solving(problemId)
        return problem_document(owned.get(problemId))

    @app.get(
        "/problems/{problemType}/{problemId}/bound", response_model=BoundDocument
    )
    def get_bound(problemType: str, problemId: str):
        problem = scoped_problem(problemType, problemId)
        report = _bound_or_422(problem)
        return BoundDocument(
            boundType=report.bound_type, value=report.value, method=report.method
        )

    @app.get(
        "/problems/{problemType}/{problemId}/bound/compare",
        response_model=BoundComparisonDocument,
    )
    def compare_bound(problemType: str, problemId: str):
        problem = scoped_problem(problemType, problemId)
        solution = problem.solution
        if (
            solution is None
            or solution.status is not SolutionStatus.SOLVED
            or solution.objective_value is None
        ):
            raise IllegalState(
                "bound comparison requires a solved problem with an objective value"
            )
        report = _bound_or_422(problem)
        comparison = bounds.compare(report, solution.objective_value)
        return BoundComparisonDocument(
            bound=BoundDocument(
                boundType=report.bound_type,
                value=report.value,
                method=report.method,
            ),
            solutionValue=comparison.solution_value,
            absoluteGap=comparison.absolute_gap,
            relativeGap=comparison.relative_gap,
        )

    def _bound_or_422(problem):
        try:
            return bounds.bound_for(problem.type_id, problem.input)
        except (ParseError, ValueError) as exc:
            raise HTTPException(
                status_code=422, detail=f"input does not parse: {exc}"
            ) from exc

    @app.get("/solvers/{problemType}", response_model=list[SolverSummary])
    def list_solvers(problemType: str):
        require_type(problemType)
        return [
            SolverSummary(
                id=d.solver_id, name=d.name, description=d.description
            )
            for d in registry.solvers_for(problemType)
        ]

    def scoped_descriptor(problemType: str, solverId: str):
        require_type(problemType)
        try:
            descriptor = registry.solver(solverId).descriptor
        except UnknownSolver as exc:
            raise UnknownProblem(str(exc)) from exc
        if descriptor.problem_type_id != problemType:
            raise UnknownProblem(
                f"solver '{solverId}' does not target '{problemType}'"
            )
        return descriptor

    @app.get(
        "/solvers/{problemType}/{solverId}/sub-routines",
        response_model=list[str],
    )
    def solver_sub_routines(problemType: str, solverId: str):
        return list(scoped_descriptor(problemType, solverId).sub_routines)

    @app.get(
        "/solvers/{problemType}/{solverId}/settings",
        response_model=list[SettingDocument],
    )
    def solver_settings(problemType: str, solverId: str):
        descriptor = scoped_descriptor(problemType, solverId)
        return [
            SettingDocument(
                name=s.name,
                kind=s.kind.value,
                default=s.default,
                choices=list(s.choices) if s.choices else None,
                description=s.description,
            )
            for s in descriptor.settings
        ]

    return app


def main() -> None:
    port = int(os.environ.get("METASOLVE_PORT", str(DEFAULT_PORT)))
    uvicorn.run(create_app(), host="0.0.0.0", port=port)


if __name__ == "__main__":
    main()
