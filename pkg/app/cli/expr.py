from __future__ import annotations

import click

from ..services.expr import parse_expr, serialize
from .shared import emit, guarded


def register(group: click.Group) -> None:
    @group.command(name="expr")
    @click.option("--genus", "-g", type=click.IntRange(min=1), required=True, help="Genus of the surface.")
    @click.argument("expression")
    @click.pass_context
    @guarded
    def expr_cmd(ctx: click.Context, genus: int, expression: str) -> None:
        """Evaluate EXPRESSION and print its canonical form."""
        value = parse_expr(expression, genus)
        text = serialize(value)
        emit(ctx, [text], {"genus": genus, "grade": value.grade, "value": text})
