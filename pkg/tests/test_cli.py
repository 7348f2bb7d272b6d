from __future__ import annotations

import json
import shutil

import pytest
from click.testing import CliRunner

from app.config import settings
from app.main import cli


@pytest.fixture
def runner():
    return CliRunner()


def _run(runner, *args):
    return runner.invoke(cli, list(args))


# -------------------------
# expr
# -------------------------

def test_expr_prints_canonical_value(runner):
    result = _run(runner, "expr", "--genus", "3", "C(a1^b1+a2^b2+a3^b3)")
    assert result.exit_code == 0
    assert result.output.strip() == "3"


def test_expr_syntax_error_exits_2(runner):
    result = _run(runner, "expr", "-g", "2", "a1 +")
    assert result.exit_code == 2
    assert "column 5" in result.output


def test_expr_contract_violation_exits_4(runner):
    result = _run(runner, "expr", "-g", "2", "C(a1)")
    assert result.exit_code == 4


def test_expr_structured_output(runner):
    result = _run(runner, "--output", "structured", "expr", "-g", "2", "L(1)")
    assert result.exit_code == 0
    assert json.loads(result.output) == {"genus": 2, "grade": 2, "value": "a1^b1 + a2^b2"}


def test_missing_genus_is_a_usage_error(runner):
    assert _run(runner, "expr", "a1").exit_code == 2


# -------------------------
# eval / gysin / taujstar / certify
# -------------------------

def test_eval_shipped_fixture(runner):
    result = _run(runner, "eval", "nested_g4_k2")
    assert result.exit_code == 0
    assert "classification: TRULY_NESTED f1<f2" in result.output
    assert "tau: a1^b1^a3^a4" in result.output


def test_eval_from_file(runner, fixtures_dir):
    result = _run(runner, "eval", str(fixtures_dir / "ring_g3.cfg"))
    assert result.exit_code == 0
    assert "tau: 0" in result.output


def test_eval_invalid_configuration_exits_3(runner, tmp_path, fixtures_dir):
    text = (fixtures_dir / "nested_g4_k2.cfg").read_text(encoding="utf-8")
    bad = tmp_path / "bad.cfg"
    bad.write_text(text.replace("region R0 genus 1 pairs 1", "region R0 genus 2 pairs 1"), encoding="utf-8")
    result = _run(runner, "eval", str(bad))
    assert result.exit_code == 3
    assert "EULER" in result.output
    assert "INDEX_PARTITION" in result.output


def test_eval_config_syntax_error_exits_2(runner, tmp_path):
    bad = tmp_path / "bad.cfg"
    bad.write_text("genus 2\nregion R0 genus one pairs 1\n", encoding="utf-8")
    result = _run(runner, "eval", str(bad))
    assert result.exit_code == 2
    assert "line 2" in result.output


def test_eval_unknown_config_exits_2(runner):
    assert _run(runner, "eval", "no_such_fixture").exit_code == 2


def test_gysin(runner):
    result = _run(runner, "gysin", "closest_a_g5")
    assert result.exit_code == 0
    assert result.output.strip() == "2*a1^b1^a3^a4^a5^b5"


def test_gysin_without_formula_exits_4(runner):
    result = _run(runner, "gysin", "ring_g3")
    assert result.exit_code == 4
    assert "no closed form" in result.output


def test_taujstar(runner):
    result = _run(runner, "taujstar", "ring_g3")
    assert result.exit_code == 0
    assert result.output.strip() == "[a1^b1^a3]^[a2^b2^a3]"


def test_certify_single(runner):
    result = _run(runner, "certify", "ring_g3")
    assert result.exit_code == 0
    assert "conclusion: IN_KER_TAU_NONZERO_HOMOLOGY" in result.output


def test_certify_comparison(runner):
    result = _run(runner, "certify", "closest_a_g5", "closest_b_g5")
    assert result.exit_code == 0
    assert result.output.strip().splitlines()[-3:] == ["EQUAL_TAU", "DIFFER_GYSIN", "DIFFER_TAUJSTAR"]


def test_certify_structured(runner):
    result = _run(runner, "--output", "structured", "certify", "septwist_g3")
    record = json.loads(result.output)
    assert record["conclusion"] == "IN_KER_TAU_UNDETECTED"
    assert record["gysin"] is None
    assert record["gysin_note"].startswith("not applicable (")
    assert record["tau_note"] is None
    assert record["classification"] == "HAS_SEPARATING_TWIST"


# -------------------------
# span
# -------------------------

def test_span_of_expression(runner):
    result = _run(runner, "span", "--genus", "2", "--grade", "2", "a1^a2")
    assert result.exit_code == 0
    assert result.output.strip() == "dim 5 = V(l2) 5 MATCH"


def test_span_of_configuration(runner):
    result = _run(runner, "span", "--config", "nested_g4_k2")
    assert result.exit_code == 0
    assert result.output.strip() == "dim 69 = V(l2) 27 + V(l4) 42 MATCH"


def test_span_needs_exactly_one_source(runner):
    assert _run(runner, "span", "--genus", "2", "a1", "--config", "ring_g3").exit_code == 2
    assert _run(runner, "span").exit_code == 2


def test_span_grade_mismatch_exits_4(runner):
    assert _run(runner, "span", "-g", "2", "-k", "3", "a1^a2").exit_code == 4


def test_span_genus_mismatch_exits_4(runner):
    assert _run(runner, "span", "--config", "nested_g4_k2", "--genus", "3").exit_code == 4


def test_span_above_genus_is_unsupported(runner):
    assert _run(runner, "span", "-g", "2", "a1^a2^b2").exit_code == 4


def test_span_budget_exceeded_exits_1(runner):
    result = _run(runner, "--time-budget", "0.000001", "span", "--config", "nested_g4_k2")
    assert result.exit_code == 1
    assert "partial dimension" in result.output


def test_time_budget_must_be_positive(runner):
    assert _run(runner, "--time-budget", "0", "expr", "-g", "1", "a1").exit_code == 2


# -------------------------
# verify
# -------------------------

def test_verify_single_check(runner):
    result = _run(runner, "verify", "--filter", "decomposition")
    assert result.exit_code == 0
    assert "2 passed, 0 failed" in result.output


def test_verify_structured(runner):
    result = _run(runner, "--output", "structured", "verify", "--filter", "tau0")
    assert result.exit_code == 0
    records = [json.loads(line) for line in result.output.strip().splitlines()]
    assert [r["check"] for r in records] == ["tau0_is_omega"]
    assert records[0]["status"] == "PASS"
    assert records[0]["ref"].startswith("Prop 2.1: ")
    assert set(records[0]) == {"check", "ref", "status", "expected", "actual"}


def test_verify_empty_filter_exits_1(runner):
    result = _run(runner, "verify", "--filter", "no-such-check")
    assert result.exit_code == 1
    assert "no check matches" in result.output


def test_verify_corrupted_golden_exits_1(runner, tmp_path, golden_dir, monkeypatch):
    corrupted = tmp_path / "golden"
    shutil.copytree(golden_dir, corrupted)
    path = corrupted / "decomposition.txt"
    path.write_text(path.read_text(encoding="utf-8").replace("g=4: 1 8 27 48 42", "g=4: 1 8 27 48 43"), encoding="utf-8")
    monkeypatch.setattr(settings, "golden_dir", str(corrupted))

    result = _run(runner, "verify", "--filter", "decomposition")
    assert result.exit_code == 1
    assert "1 passed, 1 failed" in result.output
    assert "g=4: 1 8 27 48 43" in result.output


# -------------------------
# Documented invocations
# -------------------------

@pytest.mark.parametrize(
    "args,lines",
    [
        (["expr", "--genus", "3", "C(a1^b1+a2^b2+a3^b3)"], ["3"]),
        (["expr", "--genus", "2", "L(L(1))"], ["2*a1^b1^a2^b2"]),
        (["expr", "--genus", "2", "a1^a1"], ["0"]),
        (["eval", "fig5"], ["classification: TRULY_NESTED f1<f2", "tau: a1^b1^a3^a4"]),
        (["eval", "fig7"], ["classification: DEPENDENT_CLASSES", "tau: 0"]),
        (["eval", "fig4b"], ["classification: NOT_NESTED", "tau: 0"]),
        (["eval", "fig3a"], ["classification: TRULY_NESTED f1<f2<f3", "tau: a1^b1^a3^a4^a6 + a2^b2^a3^a4^a6"]),
        (["gysin", "fig6"], ["2*a1^b1^a2^a3^a4^b4"]),
        (["certify", "fig7"], ["conclusion: IN_KER_TAU_NONZERO_HOMOLOGY"]),
        (["certify", "fig9a", "fig9b"], ["EQUAL_TAU", "DIFFER_GYSIN"]),
        (["span", "--genus", "4", "--grade", "4", "a1^b1^a3^a4"], ["dim 69 = V(l2) 27 + V(l4) 42 MATCH"]),
        (["span", "--genus", "2", "--grade", "2", "a1^a2"], ["dim 5 = V(l2) 5 MATCH"]),
    ],
)
def test_documented_invocations(runner, args, lines):
    result = _run(runner, *args)
    assert result.exit_code == 0, result.output
    out = result.output.splitlines()
    for line in lines:
        assert line in out


def test_span_of_omega_has_dimension_one(runner):
    result = _run(runner, "span", "--genus", "3", "--grade", "2", "a1^b1+a2^b2+a3^b3")
    assert result.exit_code == 0
    assert result.output.startswith("dim 1 ")
