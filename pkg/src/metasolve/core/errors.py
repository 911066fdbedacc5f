"""Lifecycle and configuration errors raised by the problem manager."""

from __future__ import annotations

from metasolve.errors import MetasolveError


class UnknownProblemType(MetasolveError):
    """Problem type id is not registered."""


class UnknownProblem(MetasolveError):
    """No stored problem has this id."""


class UnknownSolver(MetasolveError):
    """No registered solver has this id."""


class SolverTypeMismatch(MetasolveError):
    """The solver exists but targets a different problem type."""


class InvalidSetting(MetasolveError):
    """A supplied setting is unknown or fails its type check."""

    def __init__(self, name: str, reason: str):
        self.name = name
        self.reason = reason
        super().__init__(f"setting {name!r}: {reason}")


class IllegalState(MetasolveError):
    """The requested operation is not legal in the problem's current state."""
