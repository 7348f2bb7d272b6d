from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from ..errors import ContractViolation
from .basis import SymplecticSpace

Column = Dict[int, int]


def gram_entry(p: int, q: int) -> int:
    """J[p][q] = omega(e_p, e_q) in the frozen basis order."""
    if p % 2 == 0 and q == p + 1:
        return 1
    if q % 2 == 0 and p == q + 1:
        return -1
    return 0


@dataclass(frozen=True)
class SpMatrix:
    """
    An integral 2g x 2g matrix preserving omega.

    entries[r][c] is row r, column c; column c is the image of basis vector c,
    so the matrix acts on column vectors x -> M x. The symplectic condition
    M^T J M = J is asserted at construction.
    """

    g: int
    entries: Tuple[Tuple[int, ...], ...]
    label: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        n = 2 * self.g
        if self.g < 1:
            raise ContractViolation(f"genus must be >= 1 (got {self.g})")
        if len(self.entries) != n or any(len(row) != n for row in self.entries):
            raise ContractViolation(f"SpMatrix at genus {self.g} must be {n}x{n}")
        if any(not isinstance(v, int) or isinstance(v, bool) for row in self.entries for v in row):
            raise ContractViolation("SpMatrix entries must be integers")
        if not self._preserves_form():
            raise ContractViolation(f"matrix {self.label or '(unnamed)'} does not preserve omega")

    # -------------------------
    # Construction
    # -------------------------

    @classmethod
    def identity(cls, g: int) -> "SpMatrix":
        n = 2 * g
        return cls(g, tuple(tuple(1 if r == c else 0 for c in range(n)) for r in range(n)), "I")

    @classmethod
    def from_columns(cls, g: int, columns: Mapping[int, Mapping[int, int]], label: str = "") -> "SpMatrix":
        """Build from sparse column images; basis vectors not listed are fixed."""
        n = 2 * g
        grid = [[1 if r == c else 0 for c in range(n)] for r in range(n)]
        for c, image in columns.items():
            if not 0 <= c < n:
                raise ContractViolation(f"column {c} is out of range for genus {g}")
            for r in range(n):
                grid[r][c] = 0
            for r, v in image.items():
                if not 0 <= r < n:
                    raise ContractViolation(f"row {r} is out of range for genus {g}")
                grid[r][c] += v
        return cls(g, tuple(tuple(row) for row in grid), label)

    # -------------------------
    # Structure
    # -------------------------

    @property
    def space(self) -> SymplecticSpace:
        return SymplecticSpace(self.g)

    @property
    def size(self) -> int:
        return 2 * self.g

    @cached_property
    def columns(self) -> Tuple[Tuple[Tuple[int, int], ...], ...]:
        """Sparse column images as ((row, value), ...) per column."""
        n = self.size
        return tuple(
            tuple((r, self.entries[r][c]) for r in range(n) if self.entries[r][c])
            for c in range(n)
        )

    def column(self, c: int) -> Column:
        return dict(self.columns[c])

    def _preserves_form(self) -> bool:
        n = 2 * self.g
        cols = [[(r, self.entries[r][c]) for r in range(n) if self.entries[r][c]] for c in range(n)]
        for c1 in range(n):
            for c2 in range(c1, n):
                total = 0
                for r1, v1 in cols[c1]:
                    for r2, v2 in cols[c2]:
                        w = gram_entry(r1, r2)
                        if w:
                            total += w * v1 * v2
                if total != gram_entry(c1, c2):
                    return False
        return True

    def transpose_entries(self) -> List[List[int]]:
        n = self.size
        return [[self.entries[c][r] for c in range(n)] for r in range(n)]

    # -------------------------
    # Group operations
    # -------------------------

    def __matmul__(self, other: "SpMatrix") -> "SpMatrix":
        if not isinstance(other, SpMatrix):
            return NotImplemented
        if other.g != self.g:
            raise ContractViolation(f"cannot compose genus {self.g} with genus {other.g}")
        n = self.size
        grid = tuple(
            tuple(sum(self.entries[r][m] * other.entries[m][c] for m in range(n)) for c in range(n))
            for r in range(n)
        )
        label = f"{self.label}*{other.label}" if self.label and other.label else ""
        return SpMatrix(self.g, grid, label)

    def inverse(self) -> "SpMatrix":
        # M^T J M = J  =>  M^-1 = J^-1 M^T J = -J M^T J
        n = self.size
        mt = self.transpose_entries()
        jmt = [[sum(gram_entry(r, m) * mt[m][c] for m in range(n)) for c in range(n)] for r in range(n)]
        grid = tuple(
            tuple(-sum(jmt[r][m] * gram_entry(m, c) for m in range(n)) for c in range(n))
            for r in range(n)
        )
        label = f"{self.label}^-1" if self.label else ""
        return SpMatrix(self.g, grid, label)

    def apply(self, vector: Mapping[int, int]) -> Dict[int, int]:
        """Image of a sparse coordinate vector on H."""
        out: Dict[int, int] = {}
        for c, x in vector.items():
            for r, v in self.columns[c]:
                out[r] = out.get(r, 0) + v * x
        return {r: v for r, v in out.items() if v}

    def is_identity(self) -> bool:
        return all(self.entries[r][c] == (1 if r == c else 0) for r in range(self.size) for c in range(self.size))

    def __str__(self) -> str:
        return self.label or f"SpMatrix(g={self.g})"


def compose(matrices: Sequence[SpMatrix], g: Optional[int] = None) -> SpMatrix:
    """Left-to-right product M_1 M_2 ... M_n (identity for an empty list)."""
    if not matrices:
        if g is None:
            raise ContractViolation("compose() of an empty list needs a genus")
        return SpMatrix.identity(g)
    out = matrices[0]
    for m in matrices[1:]:
        out = out @ m
    return out
