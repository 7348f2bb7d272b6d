from __future__ import annotations

from typing import TYPE_CHECKING, List, Optional, Sequence

if TYPE_CHECKING:
    from .models.surface import Violation


class TorelliError(Exception):
    """
    Base class for every error raised by the toolkit.

    The CLI maps subclasses onto exit codes (see app.cli.shared.exit_code_for).
    """


class ContractViolation(TorelliError, ValueError):
    """A precondition of an operation was broken by the caller."""


class Unsupported(TorelliError, RuntimeError):
    """The request lies outside a supported range or a proved formula."""


class FormulaNotProvided(Unsupported):
    """No closed form is available for this cycle family."""


class _PositionedError(TorelliError, ValueError):
    def __init__(self, message: str, *, line: int, column: int) -> None:
        self.message = message
        self.line = int(line)
        self.column = int(column)
        super().__init__(f"{message} (line {self.line}, column {self.column})")


class ExpressionSyntaxError(_PositionedError):
    """Malformed exterior-algebra expression text."""


class ConfigSyntaxError(_PositionedError):
    """Malformed configuration text."""


class DanglingReference(TorelliError, ValueError):
    """A configuration line names an id that was never declared."""

    def __init__(self, message: str, *, line: Optional[int] = None) -> None:
        self.line = line
        suffix = f" (line {line})" if line is not None else ""
        super().__init__(message + suffix)


class DuplicateId(TorelliError, ValueError):
    """The same id was declared twice."""

    def __init__(self, message: str, *, line: Optional[int] = None) -> None:
        self.line = line
        suffix = f" (line {line})" if line is not None else ""
        super().__init__(message + suffix)


class InvalidConfiguration(ContractViolation):
    """
    Raised by operations that need a validated configuration.

    Carries the full violation list so callers can report every problem at once.
    """

    def __init__(self, violations: Sequence["Violation"]) -> None:
        self.violations: List["Violation"] = list(violations)
        detail = "; ".join(str(v) for v in self.violations) or "unknown violation"
        super().__init__(f"configuration is not valid: {detail}")


class SpanBudgetExceeded(TorelliError, RuntimeError):
    """An orbit-span closure ran past its time budget."""

    def __init__(self, *, dimension: int, elapsed_s: float, budget_s: float) -> None:
        self.dimension = int(dimension)
        self.elapsed_s = float(elapsed_s)
        self.budget_s = float(budget_s)
        super().__init__(
            f"span computation exceeded its budget ({self.elapsed_s:.1f}s > {self.budget_s:.1f}s) "
            f"at partial dimension {self.dimension}"
        )
