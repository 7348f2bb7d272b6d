from __future__ import annotations

import random
from dataclasses import replace

import pytest

from app.errors import ContractViolation, FormulaNotProvided, InvalidConfiguration, Unsupported
from app.models.basis import NestedSpace
from app.models.certificate import Conclusion, ComparisonLine
from app.services.exterior import omega_form, wedge
from app.services.expr import parse_expr, serialize
from app.services.fixtures import (
    add_basepoint_handle,
    bare_surface,
    random_nested_chain,
    single_bounding_pair,
    swap_pairs,
    with_separating_twist,
)
from app.services.invariants import (
    as_nested_vector,
    certificate_report,
    certify,
    coefficients_even,
    compare,
    comparison_report,
    extend_by_bp,
    gysin_tau,
    johnson_values,
    stabilized_matches,
    tau0,
    tau_abelian,
    tau_by_recursion,
    tauJ_bp,
    tauJ_rank_check,
    tauJ_star,
)

SEEDS = range(200)


def test_tau0_is_omega():
    assert tau0(3) == omega_form(3)
    with pytest.raises(ContractViolation):
        tau0(1)


@pytest.mark.parametrize(
    "g,far,expected",
    [
        (2, 1, "a1^b1^a2"),
        (3, 2, "a1^b1^a3 + a2^b2^a3"),
        (5, 3, "a1^b1^a4 + a2^b2^a4 + a3^b3^a4"),
    ],
)
def test_johnson_formula(g, far, expected):
    assert serialize(tauJ_bp(single_bounding_pair(g, far), "f1")) == expected


def test_johnson_value_of_missing_pair(fixture):
    with pytest.raises(ContractViolation):
        tauJ_bp(fixture("nested_g4_k2"), "nope")


def test_extend_by_bp():
    x = parse_expr("a1^b1", 3)
    assert serialize(extend_by_bp(x, 3)) == "a1^b1^a3"
    with pytest.raises(ContractViolation):
        extend_by_bp(x, 4)


@pytest.mark.parametrize(
    "name,expected",
    [
        ("nested_g4_k3", "a1^b1^a2^a3^a4"),
        ("nested_g4_k2", "a1^b1^a3^a4"),
        ("nested_gysin_g4", "a1^b1^a2^a3"),
        ("closest_a_g5", "a1^b1^a3^a4"),
        ("closest_b_g5", "a1^b1^a3^a4"),
        ("nested_g6_k3", "a1^b1^a3^a4^a6 + a2^b2^a3^a4^a6"),
        ("single_bp_g2", "a1^b1^a2"),
    ],
)
def test_nested_cycles(fixture, name, expected):
    c = fixture(name)
    value = tau_abelian(c)
    assert serialize(value) == expected
    assert value.grade == c.k + 2
    assert tau_by_recursion(c) == value


@pytest.mark.parametrize("name", ["ring_g3", "side_by_side_g4", "septwist_g3"])
def test_vanishing_cycles(fixture, name):
    c = fixture(name)
    value = tau_abelian(c)
    assert value.is_zero
    assert value.grade == c.k + 2


def test_separating_twist_kills_a_nested_cycle(fixture):
    c = with_separating_twist(fixture("closest_a_g5"), [5])
    assert tau_abelian(c).is_zero


def test_tau_needs_a_cycle(fixture):
    with pytest.raises(ContractViolation):
        tau_abelian(fixture("bare_g2"))


def test_tau_rejects_invalid_configuration(fixture):
    c = fixture("nested_g4_k2")
    broken = replace(c, regions=tuple(replace(r, genus=2) if r.id == "R0" else r for r in c.regions))
    with pytest.raises(InvalidConfiguration):
        tau_abelian(broken)


@pytest.mark.parametrize("seed", SEEDS)
def test_recursion_agrees_on_random_chains(seed):
    c = random_nested_chain(random.Random(seed))
    value = tau_abelian(c)
    assert not value.is_zero
    assert tau_by_recursion(c) == value


def test_relabeling_pairs_moves_the_value(fixture):
    c = fixture("nested_g4_k2")
    swapped = swap_pairs(c, 1, 2)
    assert serialize(tau_abelian(swapped)) == "a2^b2^a3^a4"


# -------------------------
# Doubled classes
# -------------------------

def test_gysin_of_odd_cycles_vanishes(fixture):
    for name in ("single_bp_g2", "nested_g4_k3"):
        c = fixture(name)
        value = gysin_tau(c)
        assert value.is_zero
        assert value.grade == c.k + 4


def test_gysin_of_empty_cycle_is_omega_squared():
    w = omega_form(2)
    assert gysin_tau(bare_surface(2)) == wedge(w, w)
    assert serialize(gysin_tau(bare_surface(2))) == "2*a1^b1^a2^b2"


def test_gysin_of_nested_pairs(fixture):
    assert serialize(gysin_tau(fixture("closest_a_g5"))) == "2*a1^b1^a3^a4^a5^b5"
    assert serialize(gysin_tau(fixture("closest_b_g5"))) == "2*a1^b1^a2^b2^a3^a4"
    assert coefficients_even(gysin_tau(fixture("nested_gysin_g4")))


def test_gysin_without_closed_form(fixture):
    with pytest.raises(FormulaNotProvided):
        gysin_tau(fixture("ring_g3"))
    with pytest.raises(Unsupported):
        gysin_tau(fixture("septwist_g3"))


# -------------------------
# (tau_J)_*
# -------------------------

def test_nested_vector_labels():
    x = as_nested_vector(parse_expr("a1^b1^a3", 3))
    assert isinstance(x.space, NestedSpace)
    assert serialize(x) == "[a1^b1^a3]"
    with pytest.raises(ContractViolation):
        as_nested_vector(parse_expr("a1^b1", 3))


def test_taujstar_of_ring(fixture):
    c = fixture("ring_g3")
    assert serialize(tauJ_star(c)) == "[a1^b1^a3]^[a2^b2^a3]"
    assert tauJ_rank_check(c)
    assert [serialize(v) for v in johnson_values(c).values()] == ["a1^b1^a3", "a2^b2^a3"]


def test_taujstar_with_separating_twist(fixture):
    c = fixture("septwist_g3")
    star = tauJ_star(c)
    assert star.is_zero and star.grade == 2
    assert not tauJ_rank_check(c)


def test_taujstar_of_empty_cycle_is_one():
    assert serialize(tauJ_star(bare_surface(2))) == "1"


@pytest.mark.parametrize("seed", range(50))
def test_taujstar_vanishes_exactly_on_dependence(seed):
    c = random_nested_chain(random.Random(seed))
    assert tauJ_rank_check(c) == (not tauJ_star(c).is_zero)


# -------------------------
# Certificates
# -------------------------

def test_ring_certificate(fixture):
    cert = certify(fixture("ring_g3"))
    assert cert.conclusion == Conclusion.IN_KER_TAU_NONZERO_HOMOLOGY
    assert cert.gysin_value is None
    assert cert.gysin_note.startswith("not applicable (")
    report = certificate_report(cert)
    assert report.splitlines()[:5] == [
        "config: ring_g3",
        "genus: 3",
        "cycle: f1 f2",
        "classification: DEPENDENT_CLASSES",
        "tau: 0",
    ]
    assert "taujstar: [a1^b1^a3]^[a2^b2^a3]" in report


def test_nested_certificate(fixture):
    cert = certify(fixture("nested_g4_k2"))
    assert cert.conclusion == Conclusion.NONZERO_DETECTED_BY_TAU
    assert "classification: TRULY_NESTED f1<f2" in certificate_report(cert)


def test_separating_twist_certificate(fixture):
    cert = certify(fixture("septwist_g3"))
    assert cert.conclusion == Conclusion.IN_KER_TAU_UNDETECTED
    assert cert.gysin_value is None
    assert certificate_report(cert).splitlines()[-1].startswith("note: separating twist")


def test_empty_cycle_certificate(fixture):
    cert = certify(fixture("bare_g2"))
    assert cert.conclusion == Conclusion.UNDETERMINED
    assert "cycle: (empty)" in certificate_report(cert)


def test_closest_subsurface_comparison(fixture):
    comparison = compare(certify(fixture("closest_a_g5")), certify(fixture("closest_b_g5")))
    assert comparison.lines == (
        ComparisonLine.EQUAL_TAU,
        ComparisonLine.DIFFER_GYSIN,
        ComparisonLine.DIFFER_TAUJSTAR,
    )
    assert comparison.equal_tau and comparison.differ_gysin
    assert comparison_report(comparison).splitlines()[-3:] == ["EQUAL_TAU", "DIFFER_GYSIN", "DIFFER_TAUJSTAR"]


def test_comparison_without_gysin(fixture):
    comparison = compare(certify(fixture("ring_g3")), certify(fixture("nested_g4_k2")))
    assert ComparisonLine.GYSIN_NOT_APPLICABLE in comparison.lines
    assert ComparisonLine.DIFFER_TAU in comparison.lines


# -------------------------
# Stability
# -------------------------

@pytest.mark.parametrize("name", ["nested_g4_k3", "nested_g4_k2", "single_bp_g2", "closest_b_g5"])
def test_adding_a_handle_is_stable(fixture, name):
    c = fixture(name)
    assert stabilized_matches(c, add_basepoint_handle(c))


def test_comparison_without_tau(fixture):
    comparison = compare(certify(fixture("bare_g2")), certify(fixture("ring_g3")))
    assert comparison.lines[0] == ComparisonLine.TAU_NOT_APPLICABLE
    assert not comparison.equal_tau
