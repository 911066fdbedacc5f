"""Solver and setting descriptors plus the solver base class."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Sequence

from metasolve.core.errors import InvalidSetting
from metasolve.core.model import Problem, Solution


class SettingKind(enum.Enum):
    INTEGER = "INTEGER"
    REAL = "REAL"
    TEXT = "TEXT"
    CHOICE = "CHOICE"


@dataclass(frozen=True)
class SettingDescriptor:
    name: str
    kind: SettingKind
    default: object
    description: str = ""
    choices: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if self.kind is SettingKind.CHOICE and not self.choices:
            raise ValueError(f"CHOICE setting {self.name!r} needs choices")
        if self.kind is not SettingKind.CHOICE and self.choices:
            raise ValueError(f"only CHOICE settings may list choices, not {self.name!r}")
        object.__setattr__(self, "default", self.validate(self.default))

    def validate(self, value: object) -> object:
        """Normalize a raw value or raise InvalidSetting."""
        if self.kind is SettingKind.INTEGER:
            if isinstance(value, bool) or not isinstance(value, int):
                raise InvalidSetting(self.name, f"expected an integer, got {value!r}")
            return value
        if self.kind is SettingKind.REAL:
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise InvalidSetting(self.name, f"expected a number, got {value!r}")
            return float(value)
        if self.kind is SettingKind.TEXT:
            if not isinstance(value, str):
                raise InvalidSetting(self.name, f"expected text, got {value!r}")
            return value
        if not isinstance(value, str) or value not in self.choices:
            raise InvalidSetting(
                self.name, f"expected one of {list(self.choices)}, got {value!r}"
            )
        return value


@dataclass(frozen=True)
class SolverDescriptor:
    solver_id: str
    name: str
    description: str
    problem_type_id: str
    settings: tuple[SettingDescriptor, ...] = ()
    sub_routines: tuple[str, ...] = ()

    def resolve_settings(self, supplied: dict[str, object] | None) -> dict[str, object]:
        """Defaults for everything unsupplied; unknown names are rejected."""
        by_name = {s.name: s for s in self.settings}
        supplied = supplied or {}
        for name in supplied:
            if name not in by_name:
                raise InvalidSetting(name, "not a setting of this solver")
        resolved: dict[str, object] = {}
        for descriptor in self.settings:
            if descriptor.name in supplied:
                resolved[descriptor.name] = descriptor.validate(supplied[descriptor.name])
            else:
                resolved[descriptor.name] = descriptor.default
        return resolved


@dataclass(frozen=True)
class ChildRequest:
    """A subproblem a decomposing solver wants created.

    solver_id may pre-assign the child's solver so unattended runs need no
    further configuration; None leaves the child NEEDS_CONFIGURATION for
    interactive clients.
    """

    type_id: str
    input: str
    solver_id: str | None = None
    solver_settings: dict[str, object] = field(default_factory=dict)


class Solver:
    """Base class for solver adapters.

    Leaf solvers override solve(). Decomposing solvers (descriptor declares
    sub_routines) override decompose() and compose(); the manager runs
    compose once every child has a terminal SOLVED solution.
    """

    descriptor: SolverDescriptor

    @property
    def decomposes(self) -> bool:
        return bool(self.descriptor.sub_routines)

    def solve(self, input_text: str, settings: dict[str, object]) -> Solution:
        raise NotImplementedError(f"{self.descriptor.solver_id} is not a leaf solver")

    def decompose(
        self, input_text: str, settings: dict[str, object]
    ) -> list[ChildRequest]:
        raise NotImplementedError(f"{self.descriptor.solver_id} does not decompose")

    def compose(
        self,
        input_text: str,
        settings: dict[str, object],
        children: Sequence[Problem],
    ) -> Solution:
        raise NotImplementedError(f"{self.descriptor.solver_id} does not compose")
