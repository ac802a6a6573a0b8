"""Shared exceptions and violation records."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Violation:
    """A failed law together with the first witness in deterministic scan order."""

    law: str
    witness: tuple
    detail: str = ""

    def __str__(self) -> str:
        core = f"{self.law}{self.witness!r}"
        return f"{core}: {self.detail}" if self.detail else core

    def as_dict(self) -> dict:
        out = {"law": self.law, "witness": list(self.witness)}
        if self.detail:
            out["detail"] = self.detail
        return out


class TriadKitError(Exception):
    pass


class ValidationError(TriadKitError):
    """A structure failed its defining laws; carries all recorded violations."""

    def __init__(self, violations, context: str = ""):
        self.violations = list(violations)
        self.context = context
        head = "; ".join(str(v) for v in self.violations[:3])
        more = "" if len(self.violations) <= 3 else f" (+{len(self.violations) - 3} more)"
        prefix = f"{context}: " if context else ""
        super().__init__(f"{prefix}{head}{more}")


class SearchSpaceExceeded(TriadKitError):
    def __init__(self, estimate, bound, what: str = ""):
        self.estimate = estimate
        self.bound = bound
        suffix = f" for {what}" if what else ""
        super().__init__(f"search space estimate {estimate} exceeds bound {bound}{suffix}")


class PropertyMismatch(TriadKitError):
    """A machine-checked statement failed; carries the falsifying witness."""

    def __init__(self, statement: str, witness=None):
        self.statement = statement
        self.witness = witness
        tail = f"; witness: {witness!r}" if witness is not None else ""
        super().__init__(f"{statement}{tail}")


class InternalDefect(TriadKitError):
    """A law failed inside a construction whose correctness is guaranteed."""


class NotCentralTriad(TriadKitError):
    pass


class PreconditionError(TriadKitError):
    pass


class UnknownFamily(TriadKitError):
    pass


class ParamOutOfRange(TriadKitError):
    pass
