from __future__ import annotations

import functools
import json
import logging
from pathlib import Path
from typing import Any, Callable, Dict, Iterable, Optional, TypeVar

import click

from ..config import settings
from ..errors import (
    ConfigSyntaxError,
    DanglingReference,
    DuplicateId,
    ExpressionSyntaxError,
    InvalidConfiguration,
    SpanBudgetExceeded,
    TorelliError,
)
from ..models.surface import Configuration
from ..services.config_parser import load_config
from ..services.fixtures import fixture_path
from ..services.surface import validate

logger = logging.getLogger(__name__)

# NOTE:
# Keep this module free of subcommand logic. It is the single source of truth
# for exit codes, error reporting and how a CONFIG argument is resolved.

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_PARSE_ERROR = 2
EXIT_INVALID_CONFIG = 3
EXIT_UNSUPPORTED = 4

F = TypeVar("F", bound=Callable[..., Any])


# -----------------------------
# Exit codes
# -----------------------------

def exit_code_for(exc: BaseException) -> int:
    """
    Rules:
    - syntax errors, dangling and duplicate ids: 2
    - invalid configuration: 3 (checked before its ContractViolation base)
    - exceeded span budget: 1 (a verification that did not finish)
    - any other toolkit error (unsupported, formula not provided, broken
      precondition): 4
    """
    if isinstance(exc, (ExpressionSyntaxError, ConfigSyntaxError, DanglingReference, DuplicateId)):
        return EXIT_PARSE_ERROR
    if isinstance(exc, InvalidConfiguration):
        return EXIT_INVALID_CONFIG
    if isinstance(exc, SpanBudgetExceeded):
        return EXIT_VERIFY_FAILED
    if isinstance(exc, TorelliError):
        return EXIT_UNSUPPORTED
    return EXIT_VERIFY_FAILED


def fail(exc: TorelliError) -> None:
    """Print the diagnostic to stderr and stop with the mapped exit code."""
    code = exit_code_for(exc)
    if isinstance(exc, InvalidConfiguration):
        click.echo("error: configuration is not valid", err=True)
        for v in exc.violations:
            click.echo(f"  {v}", err=True)
    else:
        click.echo(f"error: {exc}", err=True)
    logger.debug("exit %s after %s", code, type(exc).__name__)
    raise click.exceptions.Exit(code)


def guarded(fn: F) -> F:
    """Map toolkit errors raised inside a command onto exit codes."""

    @functools.wraps(fn)
    def wrapper(*args: Any, **kwargs: Any) -> Any:
        try:
            return fn(*args, **kwargs)
        except TorelliError as exc:
            fail(exc)

    return wrapper  # type: ignore[return-value]


# -----------------------------
# Context helpers
# -----------------------------

def output_mode(ctx: click.Context) -> str:
    obj = ctx.find_root().obj or {}
    return obj.get("output") or settings.output


def time_budget(ctx: click.Context) -> float:
    obj = ctx.find_root().obj or {}
    value = obj.get("time_budget")
    return float(value) if value is not None else float(settings.time_budget)


def emit(ctx: click.Context, lines: Iterable[str], record: Optional[Dict[str, Any]] = None) -> None:
    """Text mode prints the lines; structured mode prints one JSON record."""
    if output_mode(ctx) == "structured" and record is not None:
        click.echo(json.dumps(record, sort_keys=True))
        return
    for line in lines:
        click.echo(line)


# -----------------------------
# CONFIG arguments
# -----------------------------

def resolve_config(ref: str) -> Configuration:
    """
    A CONFIG argument is a file path, or the name of a shipped fixture
    (`ring_g3` for app/data/fixtures/ring_g3.cfg) or one of its aliases (`fig7`).
    """
    path = Path(ref)
    if not path.is_file():
        shipped = fixture_path(ref)
        if not shipped.is_file():
            raise click.BadParameter(f"no such file or shipped fixture: {ref}", param_hint="CONFIG")
        path = shipped
    return load_config(path)


def load_valid_config(ref: str) -> Configuration:
    """resolve_config plus validation; every violation is listed before exit 3."""
    c = resolve_config(ref)
    violations = validate(c)
    if violations:
        fail(InvalidConfiguration(violations))
    return c
