from __future__ import annotations

import logging
from fractions import Fraction
from itertools import combinations
from typing import Dict, Iterator, List, Optional

from ..errors import ContractViolation, Unsupported
from ..models.basis import Monomial, SymplecticSpace
from ..models.multivector import MultiVector

logger = logging.getLogger(__name__)


# -------------------------
# Core operations
# -------------------------

def wedge(x: MultiVector, y: MultiVector) -> MultiVector:
    """Exterior product; bilinear, graded, zero on repeated labels."""
    if x.space != y.space:
        raise ContractViolation(f"mismatched dimension context: {x.space} vs {y.space}")
    return x.wedge(y)


def omega_form(g: int) -> MultiVector:
    """omega = a_1^b_1 + ... + a_g^b_g."""
    if g < 1:
        raise ContractViolation(f"omega_form needs g >= 1 (got {g})")
    space = SymplecticSpace(g)
    return MultiVector(space, 2, {(2 * i, 2 * i + 1): 1 for i in range(g)})


def _require_symplectic(x: MultiVector) -> SymplecticSpace:
    space = x.space
    if not isinstance(space, SymplecticSpace):
        raise Unsupported(f"contraction needs a symplectic context (got {space})")
    return space


def contract(x: MultiVector) -> MultiVector:
    """
    C_k(x_1^...^x_k) = sum_{j<l} (-1)^{j+l+1} omega(x_j, x_l) x_1^..^x_j^..^x_l^..^x_k

    Applied monomial by monomial with 1-based positions j, l, exactly as written.
    """
    if x.grade < 2:
        raise ContractViolation(f"contraction needs grade >= 2 (got {x.grade})")
    space = _require_symplectic(x)
    out: Dict[Monomial, Fraction] = {}
    for mono, coeff in x.terms.items():
        k = len(mono)
        for j in range(k):
            for l in range(j + 1, k):
                w = space.pairing(mono[j], mono[l])
                if w == 0:
                    continue
                sign = -1 if ((j + 1) + (l + 1) + 1) % 2 else 1
                rest = mono[:j] + mono[j + 1:l] + mono[l + 1:]
                out[rest] = out.get(rest, Fraction(0)) + sign * w * coeff
    return MultiVector(space, x.grade - 2, out)


def lefschetz(x: MultiVector) -> MultiVector:
    """omega ^ x."""
    space = _require_symplectic(x)
    return wedge(omega_form(space.g), x)


# -------------------------
# Helpers built on the core
# -------------------------

def scalar(g: int, value: int | Fraction) -> MultiVector:
    return MultiVector.scalar(SymplecticSpace(g), value)


def basis_monomials(g: int, k: int) -> Iterator[Monomial]:
    """Grade-k monomials of H in canonical (lexicographic position) order."""
    return combinations(range(2 * g), k)


def contraction_chain(x: MultiVector, depth: Optional[int] = None) -> List[MultiVector]:
    """[x, C(x), C(C(x)), ...] until the grade drops below 2 or `depth` steps were taken."""
    chain = [x]
    current = x
    steps = 0
    while current.grade >= 2 and (depth is None or steps < depth):
        current = contract(current)
        chain.append(current)
        steps += 1
    return chain


def lefschetz_commutator_constant(g: int, k: int) -> Fraction:
    """
    Brute-force the scalar lambda with C(omega^x) - omega^C(x) = lambda x on grade k.

    C of a grade-0 or grade-1 element is read as 0. Raises if the commutator
    fails to be one common scalar on every basis monomial.
    """
    space = SymplecticSpace(g)
    if k < 0 or k > space.dimension:
        raise ContractViolation(f"grade {k} is outside 0..{space.dimension}")
    found: Optional[Fraction] = None
    for mono in basis_monomials(g, k):
        x = MultiVector(space, k, {mono: 1})
        lhs = contract(lefschetz(x))
        if k >= 2:
            lhs = lhs - lefschetz(contract(x))
        value = lhs.coefficient(mono)
        if lhs != x.scale(value):
            raise ContractViolation(f"commutator is not scalar on {mono} at g={g}")
        if found is None:
            found = value
        elif found != value:
            raise ContractViolation(f"commutator constant differs across grade-{k} monomials at g={g}")
    assert found is not None
    logger.debug("lefschetz commutator constant g=%s k=%s -> %s", g, k, found)
    return found


def stabilize(x: MultiVector, g: int) -> MultiVector:
    """View x in the exterior algebra of a larger genus (basis positions are unchanged)."""
    space = _require_symplectic(x)
    if g < space.g:
        raise ContractViolation(f"cannot stabilize from genus {space.g} down to {g}")
    return MultiVector(SymplecticSpace(g), x.grade, x.terms)
