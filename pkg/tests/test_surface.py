from __future__ import annotations

import random
from dataclasses import replace

import pytest

from app.errors import ContractViolation, InvalidConfiguration
from app.models.surface import Region, Verdict, ViolationKind
from app.services.config_parser import parse_config
from app.services.expr import serialize
from app.services.fixtures import (
    SHIPPED,
    add_basepoint_handle,
    bare_surface,
    load_fixture,
    random_nested_chain,
    relabel_ids,
    ring,
    single_bounding_pair,
    with_cycle_order,
    with_separating_twist,
)
from app.services.surface import (
    classify,
    components_after_cut,
    ensure_valid,
    far_pair_indices,
    far_symplectic_form,
    near_pair_indices,
    near_symplectic_form,
    separates,
    side_genus,
    validate,
)

SEEDS = range(200)

EXPECTED_VERDICTS = {
    "nested_g4_k2": "TRULY_NESTED f1<f2",
    "nested_gysin_g4": "TRULY_NESTED f1<f2",
    "nested_g4_k3": "TRULY_NESTED f1<f2<f3",
    "side_by_side_g4": "NOT_NESTED",
    "ring_g3": "DEPENDENT_CLASSES",
    "closest_a_g5": "TRULY_NESTED f1<f2",
    "closest_b_g5": "TRULY_NESTED f1<f2",
    "single_bp_g2": "TRULY_NESTED f1",
    "septwist_g3": "HAS_SEPARATING_TWIST",
    "bare_g2": "TRULY_NESTED",
    "nested_g6_k3": "TRULY_NESTED f1<f2<f3",
}


def _kinds(c):
    return {v.kind for v in validate(c)}


# -------------------------
# Validation
# -------------------------

@pytest.mark.parametrize("name", SHIPPED)
def test_shipped_fixtures_are_valid(fixture, name):
    assert validate(fixture(name)) == []


def test_two_basepoints(fixture):
    c = fixture("nested_g4_k2")
    regions = tuple(replace(r, contains_basepoint=True) for r in c.regions)
    kinds = _kinds(replace(c, regions=regions))
    assert ViolationKind.BASEPOINT in kinds


def test_raised_region_genus_breaks_bookkeeping(fixture):
    c = fixture("nested_g4_k2")
    regions = tuple(replace(r, genus=2) if r.id == "R0" else r for r in c.regions)
    assert _kinds(replace(c, regions=regions)) == {ViolationKind.EULER, ViolationKind.INDEX_PARTITION}


def test_missing_index():
    c = parse_config("genus 2\nbasepoint S\nregion S genus 2 pairs 1\n")
    violations = validate(c)
    assert any(v.kind == ViolationKind.INDEX_PARTITION and "2" in v.message for v in violations)


def test_index_out_of_range():
    c = parse_config("genus 1\nbasepoint S\nregion S genus 1 pairs 3\n")
    assert ViolationKind.INDEX_RANGE in _kinds(c)


def test_separating_curve_bounding_a_disc():
    c = parse_config(
        "genus 2\nbasepoint R0\n"
        "region R0 genus 2 pairs 1 2\nregion R1 genus 0 pairs\n"
        "sepcurve s regions R0 R1\n"
    )
    assert _kinds(c) == {ViolationKind.CURVE}


def test_nonseparating_curve_must_not_be_a_bridge():
    c = parse_config(
        "genus 2\nbasepoint R0\n"
        "region R0 genus 1 pairs 1\nregion R1 genus 0 pairs\n"
        "curve c class a2 regions R0 R1\n"
    )
    assert ViolationKind.CURVE in _kinds(c)


def test_homotopic_bounding_pair():
    c = parse_config(
        "genus 2\nbasepoint R0\n"
        "region R0 genus 1 pairs 1\nregion R1 genus 0 pairs\n"
        "curve c1 class a2 regions R0 R1\ncurve c2 class a2 regions R0 R1\n"
        "bp f curves c1 c2\ncycle f\n"
    )
    violations = validate(c)
    assert [v.kind for v in violations] == [ViolationKind.BOUNDING_PAIR]
    assert violations[0].subject == "f"


def test_bounding_pair_needs_homologous_curves(fixture):
    c = fixture("nested_g4_k2")
    curves = tuple(replace(cv, class_index=4) if cv.id == "c1b" else cv for cv in c.curves)
    violations = validate(replace(c, curves=curves))
    assert any(v.kind == ViolationKind.BOUNDING_PAIR and v.subject == "f1" for v in violations)


def test_separating_twist_needs_separating_curve(fixture):
    c = fixture("septwist_g3")
    twists = tuple(replace(s, curve_id="c1a") for s in c.separating_twists)
    assert ViolationKind.SEPARATING_TWIST in _kinds(replace(c, separating_twists=twists))


def test_repeated_cycle_generator(fixture):
    c = fixture("nested_g4_k2")
    assert ViolationKind.CYCLE in _kinds(replace(c, cycle=("f1", "f1")))


def test_ensure_valid_carries_every_violation(fixture):
    c = fixture("nested_g4_k2")
    regions = tuple(replace(r, genus=2) if r.id == "R0" else r for r in c.regions)
    with pytest.raises(InvalidConfiguration) as info:
        ensure_valid(replace(c, regions=regions))
    assert len(info.value.violations) == 2


def test_violation_text():
    c = parse_config("genus 1\nbasepoint S\nregion S genus 1 pairs 3\n")
    assert any(str(v).startswith("INDEX_RANGE [S]: ") for v in validate(c))


# -------------------------
# Classification
# -------------------------

@pytest.mark.parametrize("name,expected", sorted(EXPECTED_VERDICTS.items()))
def test_shipped_classification(fixture, name, expected):
    assert str(classify(fixture(name))) == expected


def test_nesting_order_ignores_declared_order(fixture):
    c = fixture("nested_g4_k3")
    assert c.cycle == ("f3", "f1", "f2")
    assert classify(c).order == ("f1", "f2", "f3")


def test_separation_relation(fixture):
    c = fixture("nested_g4_k2")
    assert separates(c, "f2", "f1")
    assert not separates(c, "f1", "f2")


def test_separating_twist_wins(fixture):
    c = with_separating_twist(fixture("nested_g4_k2"), [2])
    assert validate(c) == []
    assert classify(c).verdict == Verdict.HAS_SEPARATING_TWIST


def test_classify_rejects_invalid_configuration(fixture):
    c = fixture("nested_g4_k2")
    with pytest.raises(InvalidConfiguration):
        classify(replace(c, cycle=("f1", "f1")))


# -------------------------
# Sides
# -------------------------

def test_far_and_near_indices(fixture):
    c = fixture("nested_g4_k2")
    assert far_pair_indices(c, "f1") == (1,)
    assert far_pair_indices(c, "f2") == (1, 3)
    assert near_pair_indices(c, "f2") == (2,)
    assert near_pair_indices(c, "f1") == (2, 4)
    assert serialize(far_symplectic_form(c)) == "a1^b1"
    assert serialize(near_symplectic_form(c)) == "a2^b2"


@pytest.mark.parametrize(
    "name,far,near",
    [
        ("fig3a", "a1^b1 + a2^b2", "0"),
        ("fig5", "a1^b1", "a2^b2"),
        ("fig6", "a1^b1", "a4^b4"),
        ("fig9a", "a1^b1", "a5^b5"),
        ("fig9b", "a1^b1", "a2^b2"),
    ],
)
def test_forms_of_drawn_configurations(name, far, near):
    c = load_fixture(name)
    assert serialize(far_symplectic_form(c)) == far
    assert serialize(near_symplectic_form(c)) == near


def test_side_genus_counts_inner_handles(fixture):
    c = fixture("nested_g4_k2")
    cut = ("c2a", "c2b")
    far, near = components_after_cut(c, cut)
    assert side_genus(c, far, cut) == 2
    assert side_genus(c, near, cut) == 1


def test_ring_sides(fixture):
    c = fixture("ring_g3")
    assert far_pair_indices(c, "f1") == (1,)
    assert far_pair_indices(c, "f2") == (2,)


def test_forms_need_a_nested_cycle(fixture):
    with pytest.raises(ContractViolation):
        far_symplectic_form(fixture("ring_g3"))
    with pytest.raises(ContractViolation):
        near_symplectic_form(fixture("nested_g4_k2"), order=("f2", "f1"))
    with pytest.raises(ContractViolation):
        far_symplectic_form(fixture("bare_g2"))


# -------------------------
# Builders
# -------------------------

def test_single_bounding_pair_builder():
    c = single_bounding_pair(4, 2)
    assert validate(c) == []
    assert far_pair_indices(c, "f1") == (1, 2)
    with pytest.raises(ContractViolation):
        single_bounding_pair(3, 3)


@pytest.mark.parametrize("g", [2, 3, 4, 5])
def test_ring_builder(g):
    c = ring(g)
    assert validate(c) == []
    expected = Verdict.TRULY_NESTED if g == 2 else Verdict.DEPENDENT_CLASSES
    assert classify(c).verdict == expected


def test_bare_surface_has_empty_nesting():
    c = bare_surface(3)
    found = classify(c)
    assert found.truly_nested and found.order == ()


def test_adding_a_handle_keeps_the_verdict(fixture):
    c = add_basepoint_handle(fixture("nested_g4_k3"))
    assert c.g == 5
    assert validate(c) == []
    assert str(classify(c)) == "TRULY_NESTED f1<f2<f3"


def test_basepoint_region_without_handles_is_allowed():
    c = parse_config(
        "genus 2\nbasepoint R1\n"
        "region R0 genus 1 pairs 1\nregion R1 genus 0 pairs\n"
        "curve c1 class a2 regions R0 R1\ncurve c2 class a2 regions R0 R1\n"
        "bp f curves c1 c2\ncycle f\n"
    )
    assert validate(c) == []
    assert far_pair_indices(c, "f") == (1,)


@pytest.mark.parametrize("seed", SEEDS)
def test_relabeling_preserves_nesting(seed):
    rng = random.Random(seed)
    c = random_nested_chain(rng)
    found = classify(c)
    assert found.verdict == Verdict.TRULY_NESTED
    assert len(found.order) == c.k

    mapping = {item.id: f"z{i}" for i, item in enumerate(c.regions + c.curves + c.bounding_pairs)}
    renamed = relabel_ids(c, mapping)
    order = list(renamed.cycle)
    rng.shuffle(order)
    again = classify(with_cycle_order(renamed, order))
    assert again.order == tuple(mapping[gen] for gen in found.order)


def test_region_equality_ignores_line():
    assert Region("R", 1, (1,), line=3) == Region("R", 1, (1,), line=9)
