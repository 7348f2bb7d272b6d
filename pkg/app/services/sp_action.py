from __future__ import annotations

import logging
import time
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from ..errors import ContractViolation, SpanBudgetExceeded, Unsupported
from ..models.basis import Monomial, SymplecticSpace
from ..models.multivector import MultiVector, merge_monomials
from ..models.sp_matrix import SpMatrix, gram_entry
from .exterior import basis_monomials, contract, lefschetz
from .expr import serialize
from .linalg import SubspaceBasis, kernel, rank, solve

logger = logging.getLogger(__name__)


# -------------------------
# Generators
# -------------------------

def transvection(v: MultiVector, label: str = "") -> SpMatrix:
    """T_v(x) = x + omega(x, v) v for an integral grade-1 vector v."""
    if not isinstance(v.space, SymplecticSpace):
        raise Unsupported(f"transvections need a symplectic context (got {v.space})")
    if v.grade != 1 or v.is_zero:
        raise ContractViolation("transvection needs a nonzero grade-1 vector")
    if not v.is_integral():
        raise ContractViolation("transvection vector must have integer coefficients")
    g = v.space.g
    coords = {mono[0]: int(c) for mono, c in v.terms.items()}
    columns: Dict[int, Dict[int, int]] = {}
    for p in range(2 * g):
        w = sum(gram_entry(p, q) * c for q, c in coords.items())
        image = {p: 1}
        if w:
            for q, c in coords.items():
                image[q] = image.get(q, 0) + w * c
        columns[p] = {r: x for r, x in image.items() if x}
    return SpMatrix.from_columns(g, columns, label or f"T[{serialize(v)}]")


def _vector(g: int, coords: Dict[int, int]) -> MultiVector:
    space = SymplecticSpace(g)
    return MultiVector(space, 1, {(p,): c for p, c in coords.items()})


def _with_inverses(forward: Sequence[SpMatrix]) -> List[SpMatrix]:
    out: List[SpMatrix] = []
    for m in forward:
        out.append(m)
        out.append(m.inverse())
    return out


@lru_cache(maxsize=None)
def _standard_generators(g: int) -> Tuple[SpMatrix, ...]:
    forward: List[SpMatrix] = []
    for i in range(g):
        forward.append(transvection(_vector(g, {2 * i: 1})))
        forward.append(transvection(_vector(g, {2 * i + 1: 1})))
    for i in range(g):
        for j in range(i + 1, g):
            forward.append(transvection(_vector(g, {2 * i: 1, 2 * j: 1})))
            forward.append(transvection(_vector(g, {2 * i + 1: 1, 2 * j + 1: 1})))
            forward.append(transvection(_vector(g, {2 * i: 1, 2 * j + 1: 1})))
            forward.append(transvection(_vector(g, {2 * j: 1, 2 * i + 1: 1})))
    return tuple(_with_inverses(forward))


def standard_generators(g: int) -> List[SpMatrix]:
    """
    Transvections along a_i, b_i, a_i+a_j, b_i+b_j and a_i+b_j (i != j), with inverses.

    Order is deterministic: forward generator followed by its inverse.
    """
    if g < 1:
        raise ContractViolation(f"genus must be >= 1 (got {g})")
    return list(_standard_generators(g))


@lru_cache(maxsize=None)
def _escalation_generators(g: int) -> Tuple[SpMatrix, ...]:
    known = set(_standard_generators(g))
    forward: List[SpMatrix] = []
    n = 2 * g
    for p in range(n):
        for q in range(p + 1, n):
            for sign in (1, -1):
                m = transvection(_vector(g, {p: 1, q: sign}))
                if m not in known:
                    known.add(m)
                    forward.append(m)
    return tuple(_with_inverses(forward))


def escalation_generators(g: int) -> List[SpMatrix]:
    """Transvections along every e_p +/- e_q not already in the standard set, with inverses."""
    return list(_escalation_generators(g))


def pair_shear(g: int, i: int, j: int) -> SpMatrix:
    """b_i -> b_i + a_j and b_j -> b_j + a_i; every other basis vector is fixed."""
    if not (1 <= i <= g and 1 <= j <= g) or i == j:
        raise ContractViolation(f"pair_shear needs distinct indices in 1..{g} (got {i}, {j})")
    ai, bi, aj, bj = 2 * (i - 1), 2 * (i - 1) + 1, 2 * (j - 1), 2 * (j - 1) + 1
    return SpMatrix.from_columns(g, {bi: {bi: 1, aj: 1}, bj: {bj: 1, ai: 1}}, f"shear[{i},{j}]")


def pair_swap(g: int, i: int, j: int) -> SpMatrix:
    """Exchange the symplectic pairs (a_i, b_i) and (a_j, b_j)."""
    if not (1 <= i <= g and 1 <= j <= g):
        raise ContractViolation(f"pair_swap needs indices in 1..{g} (got {i}, {j})")
    if i == j:
        return SpMatrix.identity(g)
    ai, bi, aj, bj = 2 * (i - 1), 2 * (i - 1) + 1, 2 * (j - 1), 2 * (j - 1) + 1
    return SpMatrix.from_columns(g, {ai: {aj: 1}, bi: {bj: 1}, aj: {ai: 1}, bj: {bi: 1}}, f"swap[{i},{j}]")


# -------------------------
# Induced action on exterior powers
# -------------------------

@lru_cache(maxsize=200_000)
def _monomial_image(m: SpMatrix, mono: Monomial) -> Tuple[Tuple[Monomial, int], ...]:
    partial: Dict[Monomial, int] = {(): 1}
    for p in mono:
        step: Dict[Monomial, int] = {}
        for prefix, c in partial.items():
            for r, v in m.columns[p]:
                sign, merged = merge_monomials(prefix, (r,))
                if merged is None:
                    continue
                step[merged] = step.get(merged, 0) + sign * c * v
        partial = {k: v for k, v in step.items() if v}
    return tuple(partial.items())


def induced_action(m: SpMatrix, x: MultiVector) -> MultiVector:
    """Functorial action of M on the exterior algebra of H."""
    space = x.space
    if not isinstance(space, SymplecticSpace) or space.g != m.g:
        raise ContractViolation(f"dimension mismatch: {m} acts on H(g={m.g}), element lives in {space}")
    out: Dict[Monomial, Fraction] = {}
    for mono, c in x.terms.items():
        for image, v in _monomial_image(m, mono):
            out[image] = out.get(image, Fraction(0)) + c * v
    return MultiVector(space, x.grade, out)


# -------------------------
# Spans
# -------------------------

def _close(
    basis: SubspaceBasis,
    frontier: List[MultiVector],
    gens: Sequence[SpMatrix],
    *,
    started: float,
    budget_s: Optional[float],
) -> None:
    wave = 0
    while frontier:
        wave += 1
        fresh: List[MultiVector] = []
        for v in frontier:
            for m in gens:
                if budget_s is not None and time.monotonic() - started > budget_s:
                    raise SpanBudgetExceeded(
                        dimension=basis.dimension,
                        elapsed_s=time.monotonic() - started,
                        budget_s=budget_s,
                    )
                w = induced_action(m, v)
                if basis.add(w):
                    fresh.append(w)
        logger.debug("span wave %s: +%s rows (dim %s)", wave, len(fresh), basis.dimension)
        frontier = fresh


def image_span(
    elements: Iterable[MultiVector],
    gens: Optional[Sequence[SpMatrix]] = None,
    *,
    budget_s: Optional[float] = None,
    expected_dimension: Optional[int] = None,
) -> SubspaceBasis:
    """
    Smallest subspace containing every element and closed under every generator.

    Notes:
    - Breadth-first: generators are applied only to rows added in the previous
      wave; rows already closed stay closed.
    - When expected_dimension is given and the closure stalls below it, the
      generator set is enlarged with escalation_generators and the closure
      resumes from every row. The event is logged and recorded on the result.
    - Exceeding budget_s raises SpanBudgetExceeded with the partial dimension.
    """
    items = list(elements)
    if not items:
        raise ContractViolation("image_span needs at least one element")
    space = items[0].space
    if not isinstance(space, SymplecticSpace):
        raise Unsupported(f"spans need a symplectic context (got {space})")
    grades = {x.grade for x in items if not x.is_zero}
    if len(grades) > 1:
        raise ContractViolation(f"image_span needs homogeneous elements (grades {sorted(grades)})")
    grade = grades.pop() if grades else items[0].grade

    gen_list = list(gens) if gens is not None else standard_generators(space.g)
    started = time.monotonic()
    basis = SubspaceBasis(space, grade)
    frontier = [x for x in items if basis.add(x)]
    _close(basis, frontier, gen_list, started=started, budget_s=budget_s)

    if expected_dimension is not None and basis.dimension < expected_dimension:
        known = set(gen_list)
        extra = [m for m in escalation_generators(space.g) if m not in known]
        logger.warning(
            "span stalled at dim %s below expected %s; escalating with %s extra generators",
            basis.dimension,
            expected_dimension,
            len(extra),
        )
        basis.escalated = True
        gen_list = gen_list + extra
        _close(basis, basis.rows(), gen_list, started=started, budget_s=budget_s)

    logger.debug("span closed at dim %s in %.2fs", basis.dimension, time.monotonic() - started)
    return basis


def orbit_span(
    x: MultiVector,
    gens: Optional[Sequence[SpMatrix]] = None,
    *,
    budget_s: Optional[float] = None,
    expected_dimension: Optional[int] = None,
) -> SubspaceBasis:
    """The Sp-span of x under the given generators (standard_generators by default)."""
    return image_span([x], gens, budget_s=budget_s, expected_dimension=expected_dimension)


# -------------------------
# Decomposition bookkeeping
# -------------------------

def irrep_dimension(g: int, k: int) -> int:
    """dim V(lambda_k) = C(2g,k) - C(2g,k-2), for 0 <= k <= g."""
    if g < 1 or k < 0:
        raise ContractViolation(f"irrep_dimension needs g >= 1 and k >= 0 (got g={g}, k={k})")
    if k > g:
        raise Unsupported(f"irrep_dimension is only stated for k <= g (got g={g}, k={k})")
    lower = comb(2 * g, k - 2) if k >= 2 else 0
    return comb(2 * g, k) - lower


def primitive_membership(x: MultiVector) -> bool:
    """True iff C(x) = 0; grade 0 and 1 elements are primitive."""
    if x.grade < 2:
        return True
    return contract(x).is_zero


def contraction_nullity(g: int, k: int) -> int:
    """Brute-force nullity of C_k on the grade-k part of H at genus g."""
    if g < 1 or k < 0 or k > 2 * g:
        raise ContractViolation(f"contraction_nullity needs 0 <= k <= 2g (got g={g}, k={k})")
    total = comb(2 * g, k)
    if k < 2:
        return total
    space = SymplecticSpace(g)
    images = (contract(MultiVector(space, k, {mono: 1})).terms for mono in basis_monomials(g, k))
    return total - rank(images)


@lru_cache(maxsize=None)
def _primitive_basis(g: int, k: int) -> Tuple[MultiVector, ...]:
    space = SymplecticSpace(g)
    monos = list(basis_monomials(g, k))
    if k < 2:
        return tuple(MultiVector(space, k, {m: 1}) for m in monos)
    columns = [contract(MultiVector(space, k, {m: 1})).terms for m in monos]
    return tuple(
        MultiVector(space, k, {monos[i]: c for i, c in dep.items()})
        for dep in kernel(columns)
    )


def primitive_basis(g: int, k: int) -> List[MultiVector]:
    """A basis of ker C_k (all of the grade-k part when k < 2)."""
    if g < 1 or k < 0 or k > 2 * g:
        raise ContractViolation(f"primitive_basis needs 0 <= k <= 2g (got g={g}, k={k})")
    return list(_primitive_basis(g, k))


@dataclass(frozen=True)
class LefschetzComponent:
    weight: int
    dimension: int
    present: bool

    @property
    def name(self) -> str:
        return f"V(l{self.weight})"


def lefschetz_components(x: MultiVector) -> List[LefschetzComponent]:
    """
    Components V(lambda_{k-2j}) of x = sum_j omega^j ^ x_j with x_j primitive.

    Solved exactly against the basis union_j omega^j ^ ker C_{k-2j}. Listed from
    the top weight down; `present` marks x_j != 0.
    """
    space = x.space
    if not isinstance(space, SymplecticSpace):
        raise Unsupported(f"lefschetz_components needs a symplectic context (got {space})")
    k, g = x.grade, space.g
    if k > g:
        raise Unsupported(f"the decomposition is only stated for grade k <= g (got k={k}, g={g})")

    vectors: List[Dict[Monomial, Fraction]] = []
    tags: List[int] = []
    for j in range(k // 2 + 1):
        for prim in _primitive_basis(g, k - 2 * j):
            lifted = prim
            for _ in range(j):
                lifted = lefschetz(lifted)
            vectors.append(dict(lifted.terms))
            tags.append(j)

    coefficients = solve(vectors, x.terms)
    if coefficients is None:
        # the union spans the whole grade-k part for k <= g
        raise ContractViolation(f"Lefschetz basis failed to span grade {k} at genus {g}")

    present = {j: False for j in range(k // 2 + 1)}
    for tag, c in zip(tags, coefficients):
        if c:
            present[tag] = True
    return [
        LefschetzComponent(weight=k - 2 * j, dimension=irrep_dimension(g, k - 2 * j), present=present[j])
        for j in range(k // 2 + 1)
    ]


def expected_span_dimension(x: MultiVector) -> int:
    """Sum of the dimensions of the Lefschetz components present in x."""
    return sum(c.dimension for c in lefschetz_components(x) if c.present)


def kernel_dimension_chain(g: int, k: int) -> int:
    """sum_j irrep_dimension(g, k - 2j) over defined terms."""
    return sum(irrep_dimension(g, k - 2 * j) for j in range(k // 2 + 1))



@dataclass(frozen=True)
class SpanSummary:
    dimension: int
    components: Tuple[LefschetzComponent, ...]
    escalated: bool = False

    @property
    def target(self) -> int:
        return sum(c.dimension for c in self.components if c.present)

    @property
    def match(self) -> bool:
        return self.dimension == self.target

    def line(self) -> str:
        present = sorted((c for c in self.components if c.present), key=lambda c: c.weight)
        parts = " + ".join(f"{c.name} {c.dimension}" for c in present) or "0"
        return f"dim {self.dimension} = {parts} {'MATCH' if self.match else 'MISMATCH'}"


def span_summary(elements: Sequence[MultiVector], *, budget_s: Optional[float] = None) -> SpanSummary:
    """
    Close the span of the elements and compare it with the Lefschetz components
    they touch (the components of a sum of several elements are the union).
    """
    components: Dict[int, LefschetzComponent] = {}
    for x in elements:
        for comp in lefschetz_components(x):
            seen = components.get(comp.weight)
            if seen is None or (comp.present and not seen.present):
                components[comp.weight] = comp
    target = sum(c.dimension for c in components.values() if c.present)
    basis = image_span(elements, budget_s=budget_s, expected_dimension=target)
    ordered = tuple(components[w] for w in sorted(components, reverse=True))
    return SpanSummary(dimension=basis.dimension, components=ordered, escalated=basis.escalated)
