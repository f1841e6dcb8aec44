"""Exceptions and the small verdict/witness records shared by every module."""

from dataclasses import dataclass, field
from typing import Any


@dataclass(frozen=True)
class Witness:
    """A concrete configuration explaining why a check failed.

    ``elements`` are ElementIds on the structure the check ran against and
    ``names`` their labels, so a witness can be printed without the structure.
    """

    kind: str
    elements: tuple = ()
    names: tuple = ()
    note: str = ""
    extra: dict = field(default_factory=dict, compare=False)

    def to_json(self) -> dict:
        out = {"kind": self.kind, "elements": list(self.elements),
               "names": list(self.names), "note": self.note}
        if self.extra:
            out["extra"] = {k: _jsonable(v) for k, v in sorted(self.extra.items())}
        return out

    def __str__(self):
        core = f"{self.kind}({', '.join(self.names)})"
        return f"{core}: {self.note}" if self.note else core


def _jsonable(value: Any):
    if isinstance(value, (tuple, list, frozenset, set)):
        items = sorted(value) if isinstance(value, (frozenset, set)) else value
        return [_jsonable(v) for v in items]
    return value


@dataclass(frozen=True)
class Verdict:
    """Boolean answer plus the witness that refutes it (None when ok)."""

    ok: bool
    witness: Witness | None = None

    def __bool__(self):
        return self.ok


class DomDualError(Exception):
    """Base class; ``witness`` is set whenever a configuration can be named."""

    def __init__(self, message: str, witness: Witness | None = None):
        super().__init__(message)
        self.witness = witness


class DuplicateLabel(DomDualError, ValueError):
    pass


class CycleDetected(DomDualError, ValueError):
    def __init__(self, message, cycle, witness=None):
        super().__init__(message, witness)
        self.cycle = tuple(cycle)


class NotAPartialOrder(DomDualError, ValueError):
    pass


class NotALattice(DomDualError):
    pass


class Unbounded(DomDualError):
    pass


class NoDecomposition(DomDualError):
    pass


class NotAHom(DomDualError):
    pass


class NotCoprime(DomDualError):
    pass


class NotDomain(DomDualError):
    pass


class NotMubComplete(NotDomain):
    pass


class NotLDomain(NotDomain):
    pass


class NotSpectral(DomDualError):
    pass


class NotFDD(DomDualError):
    pass


class OracleBoundExceeded(DomDualError):
    pass


class IsoFailure(DomDualError):
    pass


class InternalInconsistency(DomDualError):
    """Raised when two routes to the same object disagree: always a bug."""


class SpecTooLarge(DomDualError, ValueError):
    pass


class ParseError(DomDualError):
    def __init__(self, message, line=None, column=None):
        super().__init__(message)
        self.line = line
        self.column = column


class ValidationError(DomDualError):
    pass
