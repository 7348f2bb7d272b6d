from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from itertools import combinations
from typing import Dict, Tuple

from ..errors import ContractViolation, Unsupported

# A monomial is stored as a strictly increasing tuple of basis positions.
Monomial = Tuple[int, ...]


class LabelKind(str, Enum):
    A = "a"
    B = "b"


@dataclass(frozen=True)
class BasisLabel:
    """
    One symplectic basis vector a_i or b_i.

    Frozen order: a_1 < b_1 < a_2 < b_2 < ... < a_g < b_g. Every sign in the
    package is computed against this order, through `position`.
    """

    kind: LabelKind
    index: int

    def __post_init__(self) -> None:
        if self.index < 1:
            raise ContractViolation(f"basis index must be >= 1 (got {self.index})")

    @property
    def position(self) -> int:
        return 2 * (self.index - 1) + (0 if self.kind == LabelKind.A else 1)

    @classmethod
    def at(cls, position: int) -> "BasisLabel":
        kind = LabelKind.A if position % 2 == 0 else LabelKind.B
        return cls(kind=kind, index=position // 2 + 1)

    def __str__(self) -> str:
        return f"{self.kind.value}{self.index}"


class LabeledSpace:
    """
    A finite labeled basis the exterior engine works over.

    Subclasses fix the label names and, when the space is symplectic, the pairing.
    """

    @property
    def dimension(self) -> int:
        raise NotImplementedError

    @property
    def symplectic(self) -> bool:
        return False

    def label_name(self, position: int) -> str:
        raise NotImplementedError

    def pairing(self, p: int, q: int) -> int:
        raise Unsupported(f"{self} carries no symplectic pairing")


@dataclass(frozen=True)
class SymplecticSpace(LabeledSpace):
    """H = H_1(S_g, Q) with basis a_1, b_1, ..., a_g, b_g and omega(a_i, b_i) = 1."""

    g: int

    def __post_init__(self) -> None:
        if self.g < 1:
            raise ContractViolation(f"genus must be >= 1 (got {self.g})")

    @property
    def dimension(self) -> int:
        return 2 * self.g

    @property
    def symplectic(self) -> bool:
        return True

    def label(self, position: int) -> BasisLabel:
        return BasisLabel.at(position)

    def position_of(self, label: BasisLabel) -> int:
        if label.index > self.g:
            raise ContractViolation(f"label {label} is out of range for genus {self.g}")
        return label.position

    def label_name(self, position: int) -> str:
        return str(BasisLabel.at(position))

    def pairing(self, p: int, q: int) -> int:
        # a_i sits at an even position with its partner b_i right after it.
        if p % 2 == 0 and q == p + 1:
            return 1
        if q % 2 == 0 and p == q + 1:
            return -1
        return 0

    def __str__(self) -> str:
        return f"H(g={self.g})"


@lru_cache(maxsize=None)
def _three_forms(g: int) -> Tuple[Monomial, ...]:
    return tuple(combinations(range(2 * g), 3))


@lru_cache(maxsize=None)
def _three_form_index(g: int) -> Dict[Monomial, int]:
    return {m: i for i, m in enumerate(_three_forms(g))}


@dataclass(frozen=True)
class NestedSpace(LabeledSpace):
    """
    The C(2g,3)-dimensional space with one basis vector per grade-3 monomial of H.

    Labels are ordered lexicographically by the underlying H-monomials, so
    exterior powers of this space model the target of (tau_J)_*.
    """

    g: int

    def __post_init__(self) -> None:
        if self.g < 1:
            raise ContractViolation(f"genus must be >= 1 (got {self.g})")

    @property
    def dimension(self) -> int:
        return len(_three_forms(self.g))

    @property
    def base(self) -> SymplecticSpace:
        return SymplecticSpace(self.g)

    def three_form(self, position: int) -> Monomial:
        return _three_forms(self.g)[position]

    def position_of(self, monomial: Monomial) -> int:
        try:
            return _three_form_index(self.g)[tuple(monomial)]
        except KeyError:
            raise ContractViolation(f"{monomial} is not a grade-3 monomial of H(g={self.g})") from None

    def label_name(self, position: int) -> str:
        names = "^".join(str(BasisLabel.at(p)) for p in self.three_form(position))
        return f"[{names}]"

    def __str__(self) -> str:
        return f"L3H(g={self.g})"
