from __future__ import annotations

import random
from fractions import Fraction

import pytest
import sympy

from app.errors import ContractViolation
from app.models.basis import SymplecticSpace
from app.services.expr import parse_expr
from app.services.linalg import EchelonBasis, SubspaceBasis, kernel, rank, solve

SEEDS = range(200)


def _random_columns(rng: random.Random):
    rows = rng.randint(1, 6)
    cols = rng.randint(1, 6)
    columns = []
    for _ in range(cols):
        columns.append({r: Fraction(rng.randint(-3, 3), rng.choice([1, 1, 2])) for r in range(rows) if rng.random() < 0.6})
    return rows, columns


def _dense(rows, columns):
    return sympy.Matrix(rows, len(columns), lambda r, c: sympy.Rational(columns[c].get(r, 0)))


@pytest.mark.parametrize("seed", SEEDS)
def test_rank_matches_sympy(seed):
    rows, columns = _random_columns(random.Random(seed))
    assert rank(columns) == _dense(rows, columns).rank()


@pytest.mark.parametrize("seed", SEEDS)
def test_kernel_vectors_vanish(seed):
    rows, columns = _random_columns(random.Random(seed))
    found = kernel(columns)
    assert len(found) == len(columns) - rank(columns)
    for dep in found:
        total = {}
        for i, c in dep.items():
            for r, v in columns[i].items():
                total[r] = total.get(r, Fraction(0)) + c * v
        assert all(v == 0 for v in total.values())


def test_echelon_rows_are_reduced():
    basis = EchelonBasis()
    assert basis.insert({0: 2, 1: 4})
    assert basis.insert({1: 1, 2: 1})
    assert not basis.insert({0: 1, 1: 3, 2: 1})
    assert basis.pivots() == [0, 1]
    for row in basis.rows():
        pivot = min(row)
        assert row[pivot] == 1
        assert all(row.get(p, 0) == 0 for p in basis.pivots() if p != pivot)
    assert basis.offered == 3


def test_express_needs_tracking():
    with pytest.raises(ContractViolation):
        EchelonBasis().express({0: 1})


def test_solve():
    vectors = [{0: 1, 1: 1}, {1: 1}]
    assert solve(vectors, {0: 2, 1: 5}) == [Fraction(2), Fraction(3)]
    assert solve(vectors, {2: 1}) is None


def test_rank_of_nothing_is_zero():
    assert rank([]) == 0


def test_subspace_basis_membership():
    g = 2
    basis = SubspaceBasis(SymplecticSpace(g), 2)
    assert basis.add(parse_expr("a1^b1", g))
    assert basis.add(parse_expr("a1^b1 + a2^b2", g))
    assert not basis.add(parse_expr("a2^b2", g))
    assert basis.contains(parse_expr("3*a1^b1 - a2^b2", g))
    assert not basis.contains(parse_expr("a1^a2", g))
    assert len(basis) == 2
    assert basis.serialize() == ["a1^b1", "a2^b2"]


def test_subspace_basis_rejects_wrong_grade():
    basis = SubspaceBasis(SymplecticSpace(2), 2)
    with pytest.raises(ContractViolation):
        basis.add(parse_expr("a1", 2))
