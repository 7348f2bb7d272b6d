from __future__ import annotations

import logging
from typing import Optional

import click

from ..errors import ContractViolation
from ..services.expr import parse_expr, serialize
from ..services.invariants import tau_abelian
from ..services.sp_action import span_summary
from .shared import emit, guarded, load_valid_config, time_budget

logger = logging.getLogger(__name__)


def register(group: click.Group) -> None:
    @group.command(name="span")
    @click.argument("expression", required=False)
    @click.option("--config", "config_ref", default=None, help="Span tau of this configuration (file or fixture name).")
    @click.option("--genus", "-g", type=click.IntRange(min=1), default=None, help="Genus (taken from --config when given).")
    @click.option("--grade", "-k", type=click.IntRange(min=0), default=None, help="Expected grade of the element.")
    @click.pass_context
    @guarded
    def span_cmd(
        ctx: click.Context,
        expression: Optional[str],
        config_ref: Optional[str],
        genus: Optional[int],
        grade: Optional[int],
    ) -> None:
        """
        Sp-span dimension of EXPRESSION (or of tau of --config), compared with
        the irreducible components it touches.
        """
        if (expression is None) == (config_ref is None):
            raise click.UsageError("give exactly one of EXPRESSION or --config")

        if config_ref is not None:
            c = load_valid_config(config_ref)
            if genus is not None and genus != c.g:
                raise ContractViolation(f"--genus {genus} does not match the configuration genus {c.g}")
            element = tau_abelian(c)
        else:
            if genus is None:
                raise click.UsageError("--genus is required with EXPRESSION")
            element = parse_expr(expression, genus)

        if grade is not None and not element.is_zero and element.grade != grade:
            raise ContractViolation(f"element has grade {element.grade}, --grade says {grade}")

        budget = time_budget(ctx)
        logger.debug("span of %s (budget %.0fs)", serialize(element), budget)
        summary = span_summary([element], budget_s=budget)
        emit(
            ctx,
            [summary.line()],
            {
                "element": serialize(element),
                "dimension": summary.dimension,
                "target": summary.target,
                "components": {c.name: c.dimension for c in summary.components if c.present},
                "match": summary.match,
                "escalated": summary.escalated,
            },
        )
