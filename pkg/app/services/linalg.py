from __future__ import annotations

from fractions import Fraction
from typing import Dict, Generic, Hashable, Iterable, List, Mapping, Optional, Sequence, Tuple, TypeVar

from ..errors import ContractViolation
from ..models.basis import LabeledSpace
from ..models.multivector import MultiVector

K = TypeVar("K", bound=Hashable)

SparseVector = Dict[K, Fraction]


def _axpy(target: Dict, factor: Fraction, source: Mapping) -> None:
    """target += factor * source, dropping entries that cancel."""
    for key, value in source.items():
        total = target.get(key, Fraction(0)) + factor * value
        if total:
            target[key] = total
        else:
            target.pop(key, None)


class EchelonBasis(Generic[K]):
    """
    Incremental reduced row echelon basis over the rationals.

    Rules:
    - Every row has coefficient 1 at its pivot and 0 at every other row's pivot.
    - The pivot of a new row is the smallest column of its remainder.
    - With track=True each row remembers its combination of the offered vectors
      (numbered in offer order), and every offered vector that reduced to zero
      is recorded as a dependency: a combination of offered vectors equal to 0.
    """

    def __init__(self, *, track: bool = False) -> None:
        self._rows: List[Dict[K, Fraction]] = []
        self._pivots: Dict[K, int] = {}
        self._track = track
        self._combos: List[Dict[int, Fraction]] = []
        self._offered = 0
        self.dependencies: List[Dict[int, Fraction]] = []

    @property
    def dimension(self) -> int:
        return len(self._rows)

    @property
    def offered(self) -> int:
        return self._offered

    def rows(self) -> List[Dict[K, Fraction]]:
        return [dict(r) for r in self._rows]

    def pivots(self) -> List[K]:
        return sorted(self._pivots)

    def _reduce(self, vector: Mapping[K, Fraction]) -> Tuple[Dict[K, Fraction], Dict[int, Fraction]]:
        remainder: Dict[K, Fraction] = {k: Fraction(v) for k, v in vector.items() if v}
        used: Dict[int, Fraction] = {}
        # rows vanish on foreign pivots, so a single pass over the input's pivots is enough
        for col in [c for c in remainder if c in self._pivots]:
            factor = remainder.get(col)
            if not factor:
                continue
            row_index = self._pivots[col]
            _axpy(remainder, -factor, self._rows[row_index])
            used[row_index] = used.get(row_index, Fraction(0)) + factor
        return remainder, used

    def reduce(self, vector: Mapping[K, Fraction]) -> Dict[K, Fraction]:
        return self._reduce(vector)[0]

    def contains(self, vector: Mapping[K, Fraction]) -> bool:
        return not self._reduce(vector)[0]

    def express(self, vector: Mapping[K, Fraction]) -> Optional[Dict[int, Fraction]]:
        """Coefficients over the offered vectors that produce `vector`, or None when outside the span."""
        if not self._track:
            raise ContractViolation("express() needs an EchelonBasis built with track=True")
        remainder, used = self._reduce(vector)
        if remainder:
            return None
        out: Dict[int, Fraction] = {}
        for row_index, factor in used.items():
            _axpy(out, factor, self._combos[row_index])
        return out

    def insert(self, vector: Mapping[K, Fraction]) -> bool:
        """Add a vector; returns True when the span grew."""
        index = self._offered
        self._offered += 1
        remainder, used = self._reduce(vector)

        combo: Dict[int, Fraction] = {}
        if self._track:
            combo[index] = Fraction(1)
            for row_index, factor in used.items():
                _axpy(combo, -factor, self._combos[row_index])

        if not remainder:
            if self._track:
                self.dependencies.append(combo)
            return False

        pivot = min(remainder)
        scale = 1 / remainder[pivot]
        row = {k: v * scale for k, v in remainder.items()}
        if self._track:
            combo = {k: v * scale for k, v in combo.items()}

        for i, other in enumerate(self._rows):
            factor = other.get(pivot)
            if factor:
                _axpy(other, -factor, row)
                if self._track:
                    _axpy(self._combos[i], -factor, combo)

        self._pivots[pivot] = len(self._rows)
        self._rows.append(row)
        if self._track:
            self._combos.append(combo)
        return True


# -------------------------
# One-shot helpers
# -------------------------

def rank(vectors: Iterable[Mapping]) -> int:
    basis: EchelonBasis = EchelonBasis()
    for v in vectors:
        basis.insert(v)
    return basis.dimension


def kernel(columns: Sequence[Mapping]) -> List[Dict[int, Fraction]]:
    """
    Basis of the kernel of the map whose i-th column is columns[i].

    Each kernel vector is a sparse map column index -> coefficient.
    """
    basis: EchelonBasis = EchelonBasis(track=True)
    for col in columns:
        basis.insert(col)
    return [dict(d) for d in basis.dependencies]


def solve(vectors: Sequence[Mapping], target: Mapping) -> Optional[List[Fraction]]:
    """Coefficients c with sum c_i vectors[i] = target, or None if target is outside their span."""
    basis: EchelonBasis = EchelonBasis(track=True)
    for v in vectors:
        basis.insert(v)
    combo = basis.express(target)
    if combo is None:
        return None
    return [combo.get(i, Fraction(0)) for i in range(len(vectors))]


# -------------------------
# Subspaces of exterior powers
# -------------------------

class SubspaceBasis:
    """
    A subspace of the grade-k part of an exterior algebra, held in reduced echelon form.

    Notes:
    - Rows are linearly independent MultiVectors; membership is exact.
    - `escalated` records that a span computation had to enlarge its generator set.
    """

    def __init__(self, space: LabeledSpace, grade: int) -> None:
        if grade < 0:
            raise ContractViolation(f"grade must be >= 0 (got {grade})")
        self.space = space
        self.grade = grade
        self.escalated = False
        self._echelon: EchelonBasis = EchelonBasis()

    def _check(self, x: MultiVector) -> None:
        if x.space != self.space:
            raise ContractViolation(f"mismatched dimension context: {x.space} vs {self.space}")
        if not x.is_zero and x.grade != self.grade:
            raise ContractViolation(f"expected grade {self.grade}, got {x.grade}")

    @property
    def dimension(self) -> int:
        return self._echelon.dimension

    def add(self, x: MultiVector) -> bool:
        self._check(x)
        return self._echelon.insert(x.terms)

    def contains(self, x: MultiVector) -> bool:
        self._check(x)
        return self._echelon.contains(x.terms)

    def rows(self) -> List[MultiVector]:
        return [MultiVector(self.space, self.grade, r) for r in self._echelon.rows()]

    def serialize(self) -> List[str]:
        from .expr import serialize

        return [serialize(r) for r in self.rows()]

    def __len__(self) -> int:
        return self.dimension

    def __repr__(self) -> str:
        return f"SubspaceBasis({self.space}, grade={self.grade}, dim={self.dimension})"
