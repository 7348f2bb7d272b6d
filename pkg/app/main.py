from __future__ import annotations

import logging
from typing import Optional

import click

from .cli import register_all
from .config import OUTPUT_MODES, settings

logger = logging.getLogger(__name__)


@click.group(name="torelli")
@click.option(
    "--output",
    type=click.Choice(OUTPUT_MODES),
    default=None,
    help="text (default) or structured: one JSON record per line.",
)
@click.option("--time-budget", type=click.FloatRange(min=0, min_open=True), default=None, help="Seconds per span computation.")
@click.option("--log-level", default=None, help="Override TORELLI_LOG_LEVEL for this invocation.")
@click.pass_context
def cli(ctx: click.Context, output: Optional[str], time_budget: Optional[float], log_level: Optional[str]) -> None:
    """Exact Johnson-invariant toolkit for abelian cycles in the Torelli group."""
    ctx.ensure_object(dict)
    ctx.obj["output"] = output or settings.output
    ctx.obj["time_budget"] = time_budget if time_budget is not None else settings.time_budget
    if log_level:
        logging.getLogger().setLevel(log_level.strip().upper())


register_all(cli)


def run() -> None:
    logging.basicConfig(
        level=getattr(logging, settings.log_level, logging.INFO),
        format="%(levelname)s %(name)s: %(message)s",
    )
    settings.validate_runtime()
    logger.debug("settings: %s", settings.redacted_dict())
    cli.main(prog_name="torelli")
