"""Exception types shared across the toolbox.

Domain errors raised by parsers, solvers and transformations live here so
that callers can catch them without importing the module that raised them.
Lifecycle errors of the problem manager are defined in ``metasolve.core``.
"""

from __future__ import annotations


class MetasolveError(Exception):
    """Base class for all toolbox errors."""


class ParseError(MetasolveError):
    """Malformed instance or solution text.

    Carries the 1-based line number of the offending line.
    """

    def __init__(self, line: int, reason: str):
        self.line = line
        self.reason = reason
        super().__init__(f"line {line}: {reason}")


class LowerTriangleEntry(ParseError):
    """QUBO coefficient given with j < i; only upper-triangle entries are legal."""


class UnknownNode(MetasolveError):
    """A node id that does not exist in the instance."""


class DimensionMismatch(MetasolveError):
    """A vector whose length does not match the expected variable count."""


class TooLarge(MetasolveError):
    """Instance exceeds the hard size limit of an exact algorithm."""


class Infeasible(MetasolveError):
    """No solution can satisfy the capacity or vehicle constraints."""


class CompositionError(MetasolveError):
    """Sub-solutions cannot be stitched into a full solution."""


class NoCompatibleBackend(MetasolveError):
    """No registered backend supports the job's kind and qubit count."""


class AuthenticationRequired(MetasolveError):
    """The chosen backend needs an access token and none was supplied."""


class BackendMismatch(MetasolveError):
    """Job and backend are incompatible (kind or qubit count)."""


class RemoteUnavailable(MetasolveError):
    """Remote hardware access is stubbed out; only local simulators run jobs."""


class SolverFailure(MetasolveError):
    """A solver could not produce a solution; surfaces as status ERROR."""


class InvalidSolution(MetasolveError):
    """A solver produced output that fails validation; surfaces as status INVALID."""
