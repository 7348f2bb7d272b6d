from __future__ import annotations

from typing import List, Optional, Tuple

from rich.console import Console
from rich.table import Table

from app.services.exterior import lefschetz_commutator_constant
from app.services.sp_action import contraction_nullity, irrep_dimension

MAX_GENUS = 4


def oracle_rows(max_genus: int = MAX_GENUS) -> List[Tuple[int, int, int, Optional[int], str]]:
    """
    (g, k, nullity of C_k, closed-form irrep dimension or None, commutator constant)
    for 1 <= g <= max_genus and 0 <= k <= 2g.

    The irrep column is only filled for k <= g, where the closed form is stated.
    """
    rows = []
    for g in range(1, max_genus + 1):
        for k in range(0, 2 * g + 1):
            closed = irrep_dimension(g, k) if k <= g else None
            constant = lefschetz_commutator_constant(g, k)
            rows.append((g, k, contraction_nullity(g, k), closed, str(constant)))
    return rows


def main() -> None:
    table = Table(title="brute-force oracles")
    for name in ("g", "k", "nullity C_k", "C(2g,k)-C(2g,k-2)", "commutator", "g-k"):
        table.add_column(name, justify="right")

    mismatches = 0
    for g, k, nullity, closed, constant in oracle_rows():
        if closed is not None and closed != nullity:
            mismatches += 1
        if constant != str(g - k):
            mismatches += 1
        table.add_row(str(g), str(k), str(nullity), "-" if closed is None else str(closed), constant, str(g - k))

    console = Console()
    console.print(table)
    print(f"Oracle mismatches: {mismatches}")


if __name__ == "__main__":
    main()
