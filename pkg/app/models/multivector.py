from __future__ import annotations

from bisect import bisect_right
from fractions import Fraction
from numbers import Rational
from types import MappingProxyType
from typing import Any, Dict, Iterable, Iterator, Mapping, Optional, Tuple, Union

from ..errors import ContractViolation
from .basis import LabeledSpace, Monomial

Scalar = Fraction
ScalarLike = Union[int, Fraction]


def as_scalar(value: Any) -> Fraction:
    """Exact rationals only: ints and Fractions pass, floats and strings are refused."""
    if isinstance(value, bool):
        raise ContractViolation("booleans are not scalars")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    raise ContractViolation(f"scalars must be exact rationals (got {type(value).__name__})")


def merge_monomials(left: Monomial, right: Monomial) -> Tuple[int, Optional[Monomial]]:
    """
    Wedge two sorted monomials.

    Returns (sign, merged). A repeated label gives (0, None); otherwise the sign
    is the parity of the shuffle that sorts left+right.
    """
    if not left:
        return 1, right
    if not right:
        return 1, left
    if set(left).intersection(right):
        return 0, None
    inversions = 0
    for q in right:
        # elements of `left` that must jump over q
        inversions += len(left) - bisect_right(left, q)
    merged = tuple(sorted(left + right))
    return (-1 if inversions % 2 else 1), merged


def insert_position(monomial: Monomial, p: int) -> Tuple[int, Optional[Monomial]]:
    """Wedge a single basis vector on the right of a monomial."""
    return merge_monomials(monomial, (p,))


class MultiVector:
    """
    A homogeneous element of the exterior algebra of a labeled space.

    Notes:
    - Terms map strictly increasing position tuples to exact Fractions; a zero
      coefficient is never stored.
    - The value is immutable once built; arithmetic returns new values.
    - The zero element keeps a declared grade but compares equal to every other
      zero over the same space.
    - A grade above the space dimension can only hold the zero element.
    """

    __slots__ = ("_space", "_grade", "_terms", "_hash")

    def __init__(self, space: LabeledSpace, grade: int, terms: Union[Mapping[Monomial, Any], Iterable[Tuple[Monomial, Any]]] = ()) -> None:
        if grade < 0:
            raise ContractViolation(f"grade must be >= 0 (got {grade})")
        items = terms.items() if isinstance(terms, Mapping) else terms
        dim = space.dimension
        clean: Dict[Monomial, Fraction] = {}
        for mono, coeff in items:
            key = tuple(mono)
            c = as_scalar(coeff)
            if c == 0:
                continue
            if len(key) != grade:
                raise ContractViolation(f"monomial {key} does not have grade {grade}")
            if any(b <= a for a, b in zip(key, key[1:])):
                raise ContractViolation(f"monomial {key} is not strictly increasing")
            if key and (key[0] < 0 or key[-1] >= dim):
                raise ContractViolation(f"monomial {key} is out of range for {space}")
            total = clean.get(key, Fraction(0)) + c
            if total == 0:
                clean.pop(key, None)
            else:
                clean[key] = total
        self._space = space
        self._grade = int(grade)
        self._terms: Mapping[Monomial, Fraction] = MappingProxyType(clean)
        self._hash: Optional[int] = None

    # -------------------------
    # Constructors
    # -------------------------

    @classmethod
    def zero(cls, space: LabeledSpace, grade: int) -> "MultiVector":
        return cls(space, grade)

    @classmethod
    def scalar(cls, space: LabeledSpace, value: ScalarLike) -> "MultiVector":
        return cls(space, 0, {(): value})

    @classmethod
    def basis(cls, space: LabeledSpace, positions: Iterable[int], coefficient: ScalarLike = 1) -> "MultiVector":
        """Wedge of the listed basis positions in the order given (sorted with sign)."""
        sign, mono = 1, ()
        for p in positions:
            s, merged = insert_position(mono, p)
            if merged is None:
                return cls.zero(space, len(mono) + 1)
            sign *= s
            mono = merged
        return cls(space, len(mono), {mono: sign * as_scalar(coefficient)})

    # -------------------------
    # Accessors
    # -------------------------

    @property
    def space(self) -> LabeledSpace:
        return self._space

    @property
    def grade(self) -> int:
        return self._grade

    @property
    def terms(self) -> Mapping[Monomial, Fraction]:
        return self._terms

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def coefficient(self, monomial: Monomial) -> Fraction:
        return self._terms.get(tuple(monomial), Fraction(0))

    def sorted_terms(self) -> Iterator[Tuple[Monomial, Fraction]]:
        for mono in sorted(self._terms):
            yield mono, self._terms[mono]

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self._terms.values())

    # -------------------------
    # Linear structure
    # -------------------------

    def _check_compatible(self, other: "MultiVector") -> None:
        if other._space != self._space:
            raise ContractViolation(f"mismatched dimension context: {self._space} vs {other._space}")

    def _sum_grade(self, other: "MultiVector") -> int:
        if self._grade == other._grade:
            return self._grade
        if other.is_zero:
            return self._grade
        if self.is_zero:
            return other._grade
        raise ContractViolation(
            f"inhomogeneous sum rejected (grade {self._grade} + grade {other._grade})"
        )

    def __add__(self, other: Any) -> "MultiVector":
        if not isinstance(other, MultiVector):
            return NotImplemented
        self._check_compatible(other)
        grade = self._sum_grade(other)
        merged: Dict[Monomial, Fraction] = dict(self._terms)
        for mono, c in other._terms.items():
            merged[mono] = merged.get(mono, Fraction(0)) + c
        return MultiVector(self._space, grade, merged)

    def __neg__(self) -> "MultiVector":
        return MultiVector(self._space, self._grade, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other: Any) -> "MultiVector":
        if not isinstance(other, MultiVector):
            return NotImplemented
        return self + (-other)

    def scale(self, factor: ScalarLike) -> "MultiVector":
        f = as_scalar(factor)
        return MultiVector(self._space, self._grade, {m: f * c for m, c in self._terms.items()})

    def __mul__(self, factor: Any) -> "MultiVector":
        if isinstance(factor, MultiVector):
            return NotImplemented
        return self.scale(factor)

    __rmul__ = __mul__

    # -------------------------
    # Exterior product
    # -------------------------

    def wedge(self, other: "MultiVector") -> "MultiVector":
        self._check_compatible(other)
        grade = self._grade + other._grade
        out: Dict[Monomial, Fraction] = {}
        if grade <= self._space.dimension:
            for m1, c1 in self._terms.items():
                for m2, c2 in other._terms.items():
                    sign, merged = merge_monomials(m1, m2)
                    if merged is None:
                        continue
                    out[merged] = out.get(merged, Fraction(0)) + sign * c1 * c2
        return MultiVector(self._space, grade, out)

    def __xor__(self, other: Any) -> "MultiVector":
        if not isinstance(other, MultiVector):
            return NotImplemented
        return self.wedge(other)

    # -------------------------
    # Equality / hashing
    # -------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, MultiVector):
            if other._space != self._space:
                return False
            if self.is_zero and other.is_zero:
                return True
            return self._grade == other._grade and dict(self._terms) == dict(other._terms)
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            if self.is_zero:
                return other == 0
            return self._grade == 0 and self._terms.get((), Fraction(0)) == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            if self.is_zero:
                self._hash = hash((self._space, "zero"))
            else:
                self._hash = hash((self._space, self._grade, frozenset(self._terms.items())))
        return self._hash

    def __bool__(self) -> bool:
        return not self.is_zero

    def __repr__(self) -> str:
        body = ", ".join(f"{m}: {c}" for m, c in self.sorted_terms())
        return f"MultiVector({self._space}, grade={self._grade}, {{{body}}})"
