"""
Validation reports and the error hierarchy shared by every catkit module.
"""
from dataclasses import dataclass, field
from typing import List, Optional


class CatkitError(Exception):
    """Base class for catkit errors."""


class StructuralError(CatkitError, ValueError):
    """Malformed data: indices out of range, endpoint or arity mismatch."""


class BoundExceededError(CatkitError):
    """An enumeration needed more than its declared bound."""


class CoherenceError(CatkitError):
    """A construction was given input that fails its own validation."""


class ParseError(CatkitError, ValueError):
    """Error in a catkit text document, with location information."""

    def __init__(
        self,
        code: str,
        message: str,
        line: Optional[int] = None,
        column: Optional[int] = None,
        section: Optional[str] = None,
    ):
        self.code = code
        self.message = message
        self.line = line
        self.column = column
        self.section = section
        super().__init__(self.describe())

    def describe(self) -> str:
        where = []
        if self.line is not None:
            where.append(f"line {self.line}")
        if self.column is not None:
            where.append(f"column {self.column}")
        if self.section is not None:
            where.append(f"section '{self.section}'")
        location = f" ({', '.join(where)})" if where else ""
        return f"[{self.code}] {self.message}{location}"


LAW = "law"
ILL_DEFINED = "ill-defined"
NON_INVERTIBLE = "non-invertible"


@dataclass(frozen=True)
class Violation:
    """One failed law instance."""

    law: str
    detail: str
    kind: str = LAW

    def __str__(self) -> str:
        return f"{self.law}: {self.detail}" if self.kind == LAW else f"{self.law} [{self.kind}]: {self.detail}"


@dataclass
class ValidationReport:
    """
    Outcome of a law check: the list of violated law instances.

    The report is empty iff every checked law holds.
    """

    subject: str = ""
    violations: List[Violation] = field(default_factory=list)

    def add(self, law: str, detail: str, kind: str = LAW) -> None:
        self.violations.append(Violation(law, detail, kind))

    def extend(self, other: "ValidationReport", prefix: str = "") -> None:
        for v in other.violations:
            self.violations.append(Violation(prefix + v.law, v.detail, v.kind))

    @property
    def is_valid(self) -> bool:
        return not self.violations

    def of_kind(self, kind: str) -> List[Violation]:
        return [v for v in self.violations if v.kind == kind]

    def laws(self) -> List[str]:
        return sorted({v.law for v in self.violations})

    def __len__(self) -> int:
        return len(self.violations)

    def __iter__(self):
        return iter(self.violations)

    def format(self, limit: int = 20) -> str:
        lines = [f"{self.subject}: {'valid' if self.is_valid else f'{len(self)} violation(s)'}"]
        for v in self.violations[:limit]:
            lines.append(f"  ✗ {v}")
        if len(self.violations) > limit:
            lines.append(f"  ... {len(self.violations) - limit} more")
        return "\n".join(lines)
