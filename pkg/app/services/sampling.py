from __future__ import annotations

import random
from fractions import Fraction
from typing import Dict

from ..models.basis import Monomial, SymplecticSpace
from ..models.multivector import MultiVector
from ..models.sp_matrix import SpMatrix, compose
from .sp_action import standard_generators


def random_scalar(rng: random.Random) -> Fraction:
    num = rng.choice([-3, -2, -1, 1, 2, 3])
    den = rng.choice([1, 1, 1, 2, 3])
    return Fraction(num, den)


def random_element(rng: random.Random, g: int, grade: int, max_terms: int = 4) -> MultiVector:
    """A sparse random grade-k element of H at genus g (possibly zero after cancellation)."""
    space = SymplecticSpace(g)
    n = 2 * g
    if grade > n:
        return MultiVector.zero(space, grade)
    terms: Dict[Monomial, Fraction] = {}
    for _ in range(rng.randint(1, max_terms)):
        mono = tuple(sorted(rng.sample(range(n), grade)))
        terms[mono] = terms.get(mono, Fraction(0)) + random_scalar(rng)
    return MultiVector(space, grade, terms)


def random_grade(rng: random.Random, g: int, low: int = 0, high: int = 6) -> int:
    return rng.randint(low, min(high, 2 * g))


def random_sp_product(rng: random.Random, g: int, max_length: int = 3) -> SpMatrix:
    gens = standard_generators(g)
    length = rng.randint(1, max_length)
    return compose([rng.choice(gens) for _ in range(length)], g)

