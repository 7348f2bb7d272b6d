from __future__ import annotations

from typing import Optional

import click

from ..services.expr import serialize
from ..services.invariants import (
    certificate_report,
    certify,
    compare,
    comparison_report,
    gysin_tau,
    tau_abelian,
    tauJ_star,
)
from ..services.surface import classify
from .shared import emit, guarded, load_valid_config

_CONFIG_HELP = "CONFIG is a configuration file or the name of a shipped fixture."


def register(group: click.Group) -> None:
    @group.command(name="eval", epilog=_CONFIG_HELP)
    @click.argument("config")
    @click.pass_context
    @guarded
    def eval_cmd(ctx: click.Context, config: str) -> None:
        """Classify the cycle of CONFIG and print tau."""
        c = load_valid_config(config)
        found = classify(c)
        tau = serialize(tau_abelian(c))
        emit(
            ctx,
            [f"classification: {found}", f"tau: {tau}"],
            {
                "config": c.label(),
                "verdict": found.verdict.value,
                "order": list(found.order),
                "tau": tau,
            },
        )

    @group.command(name="gysin", epilog=_CONFIG_HELP)
    @click.argument("config")
    @click.pass_context
    @guarded
    def gysin_cmd(ctx: click.Context, config: str) -> None:
        """Print the invariant of the fiberwise-doubled cycle of CONFIG."""
        c = load_valid_config(config)
        value = serialize(gysin_tau(c))
        emit(ctx, [value], {"config": c.label(), "gysin": value})

    @group.command(name="taujstar", epilog=_CONFIG_HELP)
    @click.argument("config")
    @click.pass_context
    @guarded
    def taujstar_cmd(ctx: click.Context, config: str) -> None:
        """Print the wedge of the Johnson values of the cycle of CONFIG."""
        c = load_valid_config(config)
        value = serialize(tauJ_star(c))
        emit(ctx, [value], {"config": c.label(), "taujstar": value})

    @group.command(name="certify", epilog=_CONFIG_HELP)
    @click.argument("config")
    @click.argument("second", required=False)
    @click.pass_context
    @guarded
    def certify_cmd(ctx: click.Context, config: str, second: Optional[str]) -> None:
        """
        Print the certificate of CONFIG.

        With SECOND, print both certificates and the comparison verdicts.
        """
        first = certify(load_valid_config(config))
        if second is None:
            emit(ctx, certificate_report(first).splitlines(), _record(first))
            return
        comparison = compare(first, certify(load_valid_config(second)))
        emit(
            ctx,
            comparison_report(comparison).splitlines(),
            {
                "first": _record(comparison.first),
                "second": _record(comparison.second),
                "verdicts": comparison.verdicts(),
            },
        )


def _record(cert) -> dict:
    record = {
        "config": cert.name,
        "genus": cert.g,
        "cycle": list(cert.cycle),
        "classification": str(cert.classification),
        "conclusion": cert.conclusion.value,
        "notes": list(cert.notes),
    }
    # a missing value carries its not-applicable reason under <key>_note
    for key, v, note in (
        ("tau", cert.tau_value, cert.tau_note),
        ("gysin", cert.gysin_value, cert.gysin_note),
        ("taujstar", cert.taujstar_value, cert.taujstar_note),
    ):
        record[key] = serialize(v) if v is not None else None
        record[f"{key}_note"] = note or None
    return record
