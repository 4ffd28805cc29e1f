"""Diagnostic records shared by the parser, the lowering pass and validation.

Every diagnostic carries a machine-readable rule code plus, where the input
came from a file, a source span. Operations that can fail with several
independent problems collect all of them and raise a single
:class:`DiagnosticsError` so callers never see just the first violation.
"""

from __future__ import annotations

from dataclasses import dataclass

ERROR = "error"
WARNING = "warning"


@dataclass(frozen=True)
class SourceSpan:
    """A 1-based (line, column) position with a length, inside one file."""

    file: str
    line: int
    column: int
    length: int = 1

    def __str__(self) -> str:
        return f"{self.file}:{self.line}:{self.column}"


@dataclass(frozen=True)
class Diagnostic:
    """One rule violation or warning.

    ``code`` is the rule name (e.g. ``DanglingReference``). ``entity_kind``,
    ``entity_id``, ``key`` and ``detail`` locate the offending entity and
    field so a source span can be attached after the fact.
    """

    code: str
    message: str
    severity: str = ERROR
    span: SourceSpan | None = None
    entity_kind: str | None = None
    entity_id: str | None = None
    key: str | None = None
    detail: str | None = None

    def render(self) -> str:
        if self.span is not None:
            return (
                f"{self.span.file}:{self.span.line}:{self.span.column}: "
                f"{self.severity}: {self.message}"
            )
        return f"{self.severity}: {self.message}"


class DiagnosticsError(Exception):
    """Base for failures that carry a complete list of diagnostics."""

    def __init__(self, diagnostics: list[Diagnostic]):
        self.diagnostics = list(diagnostics)
        lines = "; ".join(d.message for d in self.diagnostics[:3])
        extra = len(self.diagnostics) - 3
        if extra > 0:
            lines += f" (+{extra} more)"
        super().__init__(lines)


def sort_diagnostics(diagnostics: list[Diagnostic]) -> list[Diagnostic]:
    """Deterministic reporting order: file position first, then rule code."""

    def key(d: Diagnostic):
        if d.span is None:
            return ("", 0, 0, d.code, d.message)
        return (d.span.file, d.span.line, d.span.column, d.code, d.message)

    return sorted(diagnostics, key=key)
