from __future__ import annotations

import importlib
import logging
from typing import Dict, List, Optional, Sequence, Tuple

import click

logger = logging.getLogger(__name__)

# ---------------------------------------------------------------------
# Subcommand module registry
# ---------------------------------------------------------------------
# Stable capability names, each backed by one module in this package that
# exposes register(group). Registration order is the order below so
# `--help` output never depends on import order.
MODULES: Sequence[str] = (
    "expr",      # expr
    "evaluate",  # eval, gysin, taujstar, certify
    "span",      # span
    "verify",    # verify
)

# Every module is required: a half-registered CLI would silently drop checks.
REQUIRED_MODULES: Sequence[str] = MODULES

__all__ = ["register_all", "MODULES", "REQUIRED_MODULES"]


def _import_module(mod_path: str) -> Tuple[Optional[object], Optional[str]]:
    """
    Import a subcommand module.

    Returns: (module_or_none, error_string_or_none)
    """
    try:
        return importlib.import_module(mod_path), None
    except ModuleNotFoundError as e:
        missing = getattr(e, "name", "") or mod_path
        if missing == mod_path:
            return None, f"missing module: {missing}"
        return None, f"import error (dependency missing): {missing}"
    except Exception as e:
        return None, f"import error: {e}"


def register_all(group: click.Group) -> None:
    """
    Attach every subcommand module to the root click group.

    Each module must expose:
        def register(group) -> None

    Fail-closed: a required module that does not import or register raises
    RuntimeError after the summary is logged.
    """
    pkg = __name__
    results: Dict[str, str] = {}
    fatal: List[str] = []

    for canonical in MODULES:
        mod_path = f"{pkg}.{canonical}"
        mod, err = _import_module(mod_path)
        if mod is None:
            results[canonical] = f"not loaded ({err})"
            if canonical in REQUIRED_MODULES:
                fatal.append(f"{canonical}: {err}")
            continue

        reg = getattr(mod, "register", None)
        if not callable(reg):
            results[canonical] = f"loaded({mod_path}) but missing register()"
            if canonical in REQUIRED_MODULES:
                fatal.append(f"{canonical}: missing register()")
            continue

        try:
            reg(group)
            results[canonical] = f"registered({mod_path})"
        except Exception as e:
            logger.exception("cli module register failed: %s", mod_path)
            results[canonical] = f"register failed({mod_path}): {e}"
            if canonical in REQUIRED_MODULES:
                fatal.append(f"{canonical}: register failed")

    summary = ", ".join(f"{k}={results.get(k, 'unknown')}" for k in MODULES)
    logger.debug("cli registration summary: %s", summary)

    if fatal:
        msg = "Required cli modules failed to load/register: " + "; ".join(fatal)
        logger.error(msg)
        raise RuntimeError(msg)
