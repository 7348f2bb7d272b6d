from __future__ import annotations

import logging
from typing import Callable, Dict, List, Optional, Tuple

from ..errors import ContractViolation, FormulaNotProvided, TorelliError, Unsupported
from ..models.basis import NestedSpace, SymplecticSpace
from ..models.certificate import (
    NOT_APPLICABLE,
    Certificate,
    Comparison,
    ComparisonLine,
    Conclusion,
)
from ..models.multivector import MultiVector
from ..models.surface import Configuration, GeneratorKind, Verdict
from .exterior import omega_form, stabilize, wedge
from .expr import serialize
from .linalg import rank
from .surface import classify, ensure_valid, far_pair_indices, far_symplectic_form, near_symplectic_form, symplectic_form

logger = logging.getLogger(__name__)


def _a(g: int, m: int) -> MultiVector:
    if not 1 <= m <= g:
        raise ContractViolation(f"class index {m} outside 1..{g}")
    return MultiVector(SymplecticSpace(g), 1, {(2 * (m - 1),): 1})


# -------------------------
# Generators of the cycle
# -------------------------

def tau0(g: int) -> MultiVector:
    """The degree-zero invariant of the generator: omega."""
    if g < 2:
        raise ContractViolation(f"the Torelli group needs g >= 2 (got {g})")
    return omega_form(g)


def tauJ_bp(c: Configuration, bp_id: str) -> MultiVector:
    """
    Johnson homomorphism of one bounding pair map: omega_far ^ a_m.

    omega_far sums a_j ^ b_j over every handle on the side away from the
    basepoint; m is the pair's class index.
    """
    ensure_valid(c)
    if bp_id not in {bp.id for bp in c.bounding_pairs}:
        raise ContractViolation(f"{c.label()} has no bounding pair {bp_id!r}")
    far = symplectic_form(c.g, far_pair_indices(c, bp_id))
    return wedge(far, _a(c.g, c.bp_class(bp_id)))


def extend_by_bp(x: MultiVector, class_index: int) -> MultiVector:
    """The product with one more bounding pair of class a_m: x ^ a_m."""
    space = x.space
    if not isinstance(space, SymplecticSpace):
        raise Unsupported(f"extend_by_bp needs a symplectic context (got {space})")
    return wedge(x, _a(space.g, class_index))


def _bp_cycle(c: Configuration) -> Tuple[str, ...]:
    for gen in c.cycle:
        if c.generator_kind(gen) != GeneratorKind.BOUNDING_PAIR:
            raise Unsupported(f"{c.label()}: cycle generator {gen!r} is a separating twist")
    return c.cycle


# -------------------------
# Abelian cycles
# -------------------------

def tau_abelian(c: Configuration) -> MultiVector:
    """
    tau_k of the abelian cycle, grade k+2.

    Rules:
    - separating twist in the cycle, dependent classes, not nested: 0
    - truly nested in order f_(1) < ... < f_(k): omega_0 ^ c_1 ^ ... ^ c_k
    """
    ensure_valid(c)
    k = c.k
    if k < 1:
        raise ContractViolation(f"{c.label()}: tau_abelian needs a nonempty cycle")
    found = classify(c)
    space = SymplecticSpace(c.g)
    if found.verdict != Verdict.TRULY_NESTED:
        logger.debug("%s: %s, tau_%s vanishes", c.label(), found.verdict.value, k)
        return MultiVector.zero(space, k + 2)
    value = far_symplectic_form(c, found.order)
    for gen in found.order:
        value = wedge(value, _a(c.g, c.bp_class(gen)))
    return value


def tau_by_recursion(c: Configuration) -> MultiVector:
    """Left fold of extend_by_bp over the nesting order, starting from omega_0."""
    found = classify(c)
    if not found.truly_nested or not found.order:
        raise ContractViolation(f"{c.label()} is not a nonempty truly nested cycle")
    value = far_symplectic_form(c, found.order)
    for gen in found.order:
        value = extend_by_bp(value, c.bp_class(gen))
    return value


def gysin_tau(c: Configuration) -> MultiVector:
    """
    The invariant of the fiberwise-doubled class, grade k+4.

    Rules:
    - k odd: 0
    - k = 0: omega ^ omega
    - k even, truly nested: 2 omega_0 ^ omega^0 ^ c_1 ^ ... ^ c_k
    - k even, not truly nested: FormulaNotProvided
    """
    ensure_valid(c)
    cycle = _bp_cycle(c)
    k = len(cycle)
    space = SymplecticSpace(c.g)
    if k % 2 == 1:
        return MultiVector.zero(space, k + 4)
    if k == 0:
        w = omega_form(c.g)
        return wedge(w, w)
    found = classify(c)
    if not found.truly_nested:
        raise FormulaNotProvided(
            f"{c.label()}: no closed form for the doubled class of an even {found.verdict.value} cycle"
        )
    value = wedge(far_symplectic_form(c, found.order), near_symplectic_form(c, found.order))
    for gen in found.order:
        value = wedge(value, _a(c.g, c.bp_class(gen)))
    return value.scale(2)


# -------------------------
# (tau_J)_* certificate
# -------------------------

def as_nested_vector(x: MultiVector) -> MultiVector:
    """A grade-3 element of H as a grade-1 element of the 3-form space."""
    space = x.space
    if not isinstance(space, SymplecticSpace) or x.grade != 3:
        if x.is_zero and isinstance(space, SymplecticSpace):
            return MultiVector.zero(NestedSpace(space.g), 1)
        raise ContractViolation("as_nested_vector needs a grade-3 element of H")
    nested = NestedSpace(space.g)
    return MultiVector(nested, 1, {(nested.position_of(mono),): c for mono, c in x.terms.items()})


def tauJ_star(c: Configuration) -> MultiVector:
    """
    Wedge of the per-generator Johnson values in the exterior algebra of the
    3-form space; grade k.

    A separating twist has Johnson value 0, so a cycle containing one gives 0
    (logged).
    """
    ensure_valid(c)
    nested = NestedSpace(c.g)
    k = c.k
    if any(c.generator_kind(gen) == GeneratorKind.SEPARATING_TWIST for gen in c.cycle):
        logger.info("%s: separating twist in cycle, (tau_J)_* reported as 0", c.label())
        return MultiVector.zero(nested, k)
    value = MultiVector.scalar(nested, 1)
    for gen in c.cycle:
        value = wedge(value, as_nested_vector(tauJ_bp(c, gen)))
    return value


def tauJ_rank_check(c: Configuration) -> bool:
    """True iff the grade-3 Johnson values of the cycle are linearly independent."""
    ensure_valid(c)
    if any(c.generator_kind(gen) == GeneratorKind.SEPARATING_TWIST for gen in c.cycle):
        return False
    values = [tauJ_bp(c, gen).terms for gen in c.cycle]
    return rank(values) == len(values)


# -------------------------
# Certificates
# -------------------------

def _attempt(label: str, fn: Callable[[Configuration], MultiVector], c: Configuration) -> Tuple[Optional[MultiVector], str]:
    try:
        return fn(c), ""
    except TorelliError as exc:
        note = f"{NOT_APPLICABLE} ({exc})"
        logger.debug("%s: %s %s", c.label(), label, note)
        return None, note


def certify(c: Configuration) -> Certificate:
    """
    Evaluate tau, the Gysin invariant and (tau_J)_* and derive the conclusion.

    Undefined sub-invariants are recorded as not applicable, never raised.
    """
    ensure_valid(c)
    found = classify(c)
    tau, tau_note = _attempt("tau", tau_abelian, c)
    gysin, gysin_note = _attempt("gysin", gysin_tau, c)
    taujstar, taujstar_note = _attempt("taujstar", tauJ_star, c)

    notes: List[str] = []
    if found.verdict == Verdict.HAS_SEPARATING_TWIST:
        notes.append("separating twist in cycle: tau and (tau_J)_* vanish")

    if tau is None:
        conclusion = Conclusion.UNDETERMINED
    elif not tau.is_zero:
        conclusion = Conclusion.NONZERO_DETECTED_BY_TAU
    elif taujstar is not None and not taujstar.is_zero:
        conclusion = Conclusion.IN_KER_TAU_NONZERO_HOMOLOGY
    else:
        conclusion = Conclusion.IN_KER_TAU_UNDETECTED

    cert = Certificate(
        name=c.label(),
        g=c.g,
        cycle=c.cycle,
        classification=found,
        tau_value=tau,
        gysin_value=gysin,
        taujstar_value=taujstar,
        conclusion=conclusion,
        tau_note=tau_note,
        gysin_note=gysin_note,
        taujstar_note=taujstar_note,
        notes=tuple(notes),
    )
    logger.debug("%s: conclusion %s", c.label(), conclusion.value)
    return cert


def _same(x: Optional[MultiVector], y: Optional[MultiVector]) -> Optional[bool]:
    if x is None or y is None:
        return None
    return x == y


def compare(first: Certificate, second: Certificate) -> Comparison:
    """Record whether two certificates agree on tau, on the Gysin value and on (tau_J)_*."""
    lines: List[ComparisonLine] = []
    tau_same = _same(first.tau_value, second.tau_value)
    if tau_same is None:
        lines.append(ComparisonLine.TAU_NOT_APPLICABLE)
    else:
        lines.append(ComparisonLine.EQUAL_TAU if tau_same else ComparisonLine.DIFFER_TAU)

    gysin_same = _same(first.gysin_value, second.gysin_value)
    if gysin_same is None:
        lines.append(ComparisonLine.GYSIN_NOT_APPLICABLE)
    else:
        lines.append(ComparisonLine.EQUAL_GYSIN if gysin_same else ComparisonLine.DIFFER_GYSIN)

    star_same = _same(first.taujstar_value, second.taujstar_value)
    if star_same is None:
        lines.append(ComparisonLine.TAUJSTAR_NOT_APPLICABLE)
    else:
        lines.append(ComparisonLine.EQUAL_TAUJSTAR if star_same else ComparisonLine.DIFFER_TAUJSTAR)
    return Comparison(first=first, second=second, lines=tuple(lines))


# -------------------------
# Reports
# -------------------------

def _value_line(value: Optional[MultiVector], note: str) -> str:
    return serialize(value) if value is not None else (note or NOT_APPLICABLE)


def certificate_report(cert: Certificate) -> str:
    """Stable, diffable text form: one line per field in a fixed order."""
    lines = [
        f"config: {cert.name}",
        f"genus: {cert.g}",
        f"cycle: {' '.join(cert.cycle) or '(empty)'}",
        f"classification: {cert.classification}",
        f"tau: {_value_line(cert.tau_value, cert.tau_note)}",
        f"gysin: {_value_line(cert.gysin_value, cert.gysin_note)}",
        f"taujstar: {_value_line(cert.taujstar_value, cert.taujstar_note)}",
        f"conclusion: {cert.conclusion.value}",
    ]
    lines.extend(f"note: {n}" for n in cert.notes)
    return "\n".join(lines)


def comparison_report(comparison: Comparison) -> str:
    parts = [
        certificate_report(comparison.first),
        "",
        certificate_report(comparison.second),
        "",
    ]
    parts.extend(comparison.verdicts())
    return "\n".join(parts)


def johnson_values(c: Configuration) -> Dict[str, MultiVector]:
    """tauJ_bp of every cycle generator, keyed by id."""
    return {gen: tauJ_bp(c, gen) for gen in _bp_cycle(c)}


def coefficients_even(x: MultiVector) -> bool:
    return all(v.denominator == 1 and v.numerator % 2 == 0 for v in x.terms.values())


def stabilized_matches(c: Configuration, bigger: Configuration) -> bool:
    """tau of c viewed at the larger genus equals tau of the re-embedded configuration."""
    return stabilize(tau_abelian(c), bigger.g) == tau_abelian(bigger)
