"""Exception hierarchy and structured verdicts shared by every module."""

from __future__ import annotations

from dataclasses import dataclass, field


class PebblingError(Exception):
    """Base class for all errors raised by this package."""

    exit_code = 1


class BadInput(PebblingError):
    exit_code = 3


class MalformedEdge(BadInput):
    pass


class Disconnected(BadInput):
    pass


class Acyclic(BadInput):
    pass


class NotATree(BadInput):
    pass


class NotSubgraph(BadInput):
    pass


class UncoverableVertex(BadInput):
    pass


class SchemaError(BadInput):
    pass


class Infeasible(PebblingError):
    pass


class NumericalFailure(PebblingError):
    pass


class RationalizationFailed(PebblingError):
    pass


class OracleDisagreement(PebblingError):
    """BFS and MILP returned opposite definite verdicts."""


class BudgetExceeded(PebblingError):
    """A search hit its configured budget; the answer is unknown, not negative."""

    exit_code = 2


class StateBudgetExceeded(BudgetExceeded):
    pass


class NodeBudgetExceeded(BudgetExceeded):
    pass


class EnumerationBudgetExceeded(BudgetExceeded):
    pass


@dataclass(frozen=True)
class Failure:
    kind: str
    where: str
    message: str

    def __str__(self) -> str:
        return f"[{self.kind}] {self.where}: {self.message}"


@dataclass
class Verdict:
    """Accept/reject result carrying every failure found (empty means accept)."""

    failures: list[Failure] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def __bool__(self) -> bool:
        return self.ok

    def fail(self, kind: str, where: str, message: str) -> None:
        self.failures.append(Failure(kind, where, message))

    def extend(self, other: Verdict, prefix: str = "") -> None:
        for f in other.failures:
            where = f"{prefix}{f.where}" if prefix else f.where
            self.failures.append(Failure(f.kind, where, f.message))

    def kinds(self) -> set[str]:
        return {f.kind for f in self.failures}
