"""Exception types shared across the package."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any


@dataclass(frozen=True)
class Violation:
    """One failed law, with the offending names.

    ``kind`` is a stable tag such as ``"NonAssociative"`` or ``"Axiom3"``;
    ``args`` holds the objects/morphisms involved, in the order the tag
    suggests (for ``NonAssociative`` that is ``(h, g, f)``).
    """

    kind: str
    args: tuple[Any, ...] = ()
    message: str = ""

    def __str__(self) -> str:
        inner = ", ".join(map(str, self.args))
        text = f"{self.kind}({inner})"
        return f"{text}: {self.message}" if self.message else text

    def to_dict(self) -> dict:
        return {"kind": self.kind, "args": [str(a) for a in self.args], "message": self.message}


class LensLabError(Exception):
    """Base class for all errors raised by lenslab."""


class MalformedError(LensLabError, ValueError):
    """Raw data is structurally unusable (duplicate names, dangling references)."""


class ValidationError(LensLabError, ValueError):
    """A structure failed its laws; ``violations`` lists every failure found."""

    def __init__(self, what: str, violations: list[Violation]):
        self.what = what
        self.violations = list(violations)
        head = "; ".join(str(v) for v in self.violations[:5])
        more = f" (+{len(self.violations) - 5} more)" if len(self.violations) > 5 else ""
        super().__init__(f"invalid {what}: {head}{more}")

    @property
    def kinds(self) -> set[str]:
        return {v.kind for v in self.violations}


class DomainMismatch(LensLabError, ValueError):
    pass


class NotDOF(LensLabError, ValueError):
    pass


class CompositeMismatch(LensLabError, ValueError):
    pass


class InvalidTriangle(LensLabError, ValueError):
    pass


class NotIdempotent(LensLabError, ValueError):
    pass


class SquareDoesNotCommute(LensLabError, ValueError):
    pass


class NotEpi(LensLabError, ValueError):
    pass


class NotMono(LensLabError, ValueError):
    pass


class NotDiscrete(LensLabError, ValueError):
    pass


class ConeDoesNotCommute(LensLabError, ValueError):
    pass


class MalformedDiagram(LensLabError, ValueError):
    pass


class BoundExceeded(LensLabError, ValueError):
    pass


class CharacterisationMismatch(LensLabError, AssertionError):
    """Two characterisations of the same property disagreed; this is a bug."""
