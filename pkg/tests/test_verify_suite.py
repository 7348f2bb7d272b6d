from __future__ import annotations

import re

import pytest

from app.errors import Unsupported
from app.models.report import CheckStatus
from app.services.verify_suite import (
    CHECKS,
    Check,
    VerifyContext,
    read_golden,
    run_check,
    run_suite,
    select_checks,
)

_LOCATOR = r"(?:(?:Prop|Thm|Def) \d+\.\d+|Eq\. \(\d+\)|\u00a7\d+(?:\.\d+)?(?: Remark| corollary)?)"
SOURCE_REF = re.compile(rf"^{_LOCATOR}(?:; {_LOCATOR})*: \S")


@pytest.fixture
def ctx(fixtures_dir, golden_dir):
    return VerifyContext.from_settings(fixtures_dir=fixtures_dir, golden_dir=golden_dir)


def _write_golden(directory, check_id, body):
    path = directory / f"{check_id}.txt"
    path.write_text(f"# ref: test entry\n# provenance: closed-form\n# a comment\n{body}\n\n", encoding="utf-8")
    return path


def test_read_golden_strips_headers(tmp_path):
    golden = read_golden(_write_golden(tmp_path, "x", "line one\nline two  "))
    assert golden.ref == "test entry"
    assert golden.provenance == "closed-form"
    assert golden.body == "line one\nline two"


def test_every_check_has_a_golden_file(golden_dir):
    for check in CHECKS:
        golden = read_golden(golden_dir / f"{check.id}.txt")
        assert SOURCE_REF.match(golden.ref), golden.ref
        assert golden.ref.endswith(f": {check.title}")
        assert golden.provenance in ("closed-form", "closure", "brute-force")


def test_check_ids_are_unique():
    ids = [c.id for c in CHECKS]
    assert len(ids) == len(set(ids))


def test_filter_by_tag_or_id():
    assert [c.id for c in select_checks("decomposition")] == ["decomposition", "contraction_injective"]
    assert [c.id for c in select_checks("gysin_par")] == ["gysin_parity"]
    assert len(select_checks("")) == len(CHECKS)
    assert select_checks("nothing-like-this") == []
    assert [c.id for c in select_checks("gysin")] == ["gysin_chain_i4", "gysin_parity"]


def test_run_check_pass_and_fail(tmp_path, fixtures_dir):
    check = Check("demo", "test entry", ("demo",), lambda ctx: "value\n")
    ctx = VerifyContext.from_settings(fixtures_dir=fixtures_dir, golden_dir=tmp_path)

    _write_golden(tmp_path, "demo", "value")
    result = run_check(check, ctx)
    assert result.status == CheckStatus.PASS
    assert result.actual == "value"

    _write_golden(tmp_path, "demo", "other")
    result = run_check(check, ctx)
    assert result.status == CheckStatus.FAIL
    assert result.expected == "other"


def test_missing_golden_fails(tmp_path, fixtures_dir):
    check = Check("demo", "test entry", ("demo",), lambda ctx: "")
    ctx = VerifyContext.from_settings(fixtures_dir=fixtures_dir, golden_dir=tmp_path)
    result = run_check(check, ctx)
    assert result.status == CheckStatus.FAIL
    assert result.detail.startswith("golden file unreadable")


def test_raising_check_is_recorded(tmp_path, fixtures_dir):
    def boom(ctx):
        raise Unsupported("not today")

    def crash(ctx):
        raise KeyError("x")

    ctx = VerifyContext.from_settings(fixtures_dir=fixtures_dir, golden_dir=tmp_path)
    _write_golden(tmp_path, "demo", "error: not today")
    result = run_check(Check("demo", "test entry", (), boom), ctx)
    assert result.status == CheckStatus.FAIL
    assert result.detail == "Unsupported"

    result = run_check(Check("demo", "test entry", (), crash), ctx)
    assert result.actual.startswith("crash: ")
    assert result.detail == "KeyError"


def test_property_checks_need_enough_cases(fixtures_dir, golden_dir):
    ctx = VerifyContext.from_settings(fixtures_dir=fixtures_dir, golden_dir=golden_dir, property_cases=10)
    (check,) = select_checks("prop_associativity")
    result = run_check(check, ctx)
    assert result.status == CheckStatus.FAIL
    assert result.actual == "only 10 cases (need 200)"


def test_from_settings_ignores_none(fixtures_dir):
    ctx = VerifyContext.from_settings(fixtures_dir=fixtures_dir, property_cases=None)
    assert ctx.property_cases >= 200


def test_worker_pool_keeps_declared_order(ctx):
    serial = run_suite(ctx, "exterior", workers=1)
    pooled = run_suite(ctx, "exterior", workers=3)
    assert [e.check for e in pooled.entries] == [e.check for e in serial.entries]
    assert [e.check for e in serial.entries] == ["prop_anticommutativity", "prop_associativity", "prop_commutator"]
    assert pooled.ok
    assert pooled.json_lines() == serial.json_lines()


@pytest.mark.parametrize("check_id", [c.id for c in CHECKS])
def test_shipped_check_passes(ctx, check_id):
    (check,) = [c for c in CHECKS if c.id == check_id]
    result = run_check(check, ctx)
    assert result.status == CheckStatus.PASS, f"{result.detail}\nexpected:\n{result.expected}\nactual:\n{result.actual}"
