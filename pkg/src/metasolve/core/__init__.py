from metasolve.core.descriptors import (
    ChildRequest,
    SettingDescriptor,
    SettingKind,
    Solver,
    SolverDescriptor,
)
from metasolve.core.errors import (
    IllegalState,
    InvalidSetting,
    SolverTypeMismatch,
    UnknownProblem,
    UnknownProblemType,
    UnknownSolver,
)
from metasolve.core.manager import ProblemManager
from metasolve.core.model import (
    LEGAL_TRANSITIONS,
    TERMINAL_STATUSES,
    Problem,
    ProblemState,
    Solution,
    SolutionStatus,
    SubRoutineBinding,
)
from metasolve.core.registry import ProblemType, SolverRegistry

__all__ = [
    "ChildRequest",
    "IllegalState",
    "InvalidSetting",
    "LEGAL_TRANSITIONS",
    "Problem",
    "ProblemManager",
    "ProblemState",
    "ProblemType",
    "SettingDescriptor",
    "SettingKind",
    "Solution",
    "SolutionStatus",
    "Solver",
    "SolverDescriptor",
    "SolverRegistry",
    "SolverTypeMismatch",
    "SubRoutineBinding",
    "TERMINAL_STATUSES",
    "UnknownProblem",
    "UnknownProblemType",
    "UnknownSolver",
]
