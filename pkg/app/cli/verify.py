from __future__ import annotations

from typing import Optional

import click
from rich.console import Console
from rich.table import Table

from ..config import settings
from ..models.report import CheckStatus, RunReport
from ..services.verify_suite import VerifyContext, run_suite
from .shared import EXIT_VERIFY_FAILED, output_mode, time_budget


def _render_table(report: RunReport) -> None:
    console = Console(width=140)
    table = Table(title="verification suite")
    table.add_column("check", style="bold")
    table.add_column("ref")
    table.add_column("status")
    table.add_column("elapsed", justify="right")
    for entry in report.entries:
        status = "[green]PASS[/green]" if entry.status == CheckStatus.PASS else "[red]FAIL[/red]"
        table.add_row(entry.check, entry.ref, status, f"{entry.elapsed_s:.2f}s")
    console.print(table)

    for entry in report.entries:
        if entry.status == CheckStatus.PASS:
            continue
        console.rule(f"{entry.check} failed", style="red")
        if entry.detail:
            console.print(f"detail: {entry.detail}", markup=False)
        console.print("expected:", markup=False)
        console.print(entry.expected or "(nothing)", markup=False)
        console.print("actual:", markup=False)
        console.print(entry.actual or "(nothing)", markup=False)

    console.print(f"{report.passed} passed, {report.failed} failed", markup=False)


def register(group: click.Group) -> None:
    @group.command(name="verify")
    @click.option("--filter", "filter_text", default="", help="Run checks whose tag equals or id contains this text.")
    @click.option("--workers", type=click.IntRange(min=1), default=None, help="Run checks on a thread pool.")
    @click.option("--cases", type=click.IntRange(min=1), default=None, help="Randomized cases per property check.")
    @click.pass_context
    def verify_cmd(ctx: click.Context, filter_text: str, workers: Optional[int], cases: Optional[int]) -> None:
        """Run the verification suite against the golden files."""
        vctx = VerifyContext.from_settings(time_budget=time_budget(ctx), property_cases=cases)
        report = run_suite(vctx, filter_text, workers=workers or settings.verify_workers)

        if output_mode(ctx) == "structured":
            for line in report.json_lines():
                click.echo(line)
        else:
            _render_table(report)

        if not report.entries:
            click.echo(f"error: no check matches filter {filter_text!r}", err=True)
            raise click.exceptions.Exit(EXIT_VERIFY_FAILED)
        if not report.ok:
            raise click.exceptions.Exit(EXIT_VERIFY_FAILED)
