from __future__ import annotations

import random
from fractions import Fraction

import pytest

from app.errors import ContractViolation, ExpressionSyntaxError
from app.services.expr import format_scalar, parse_expr, serialize
from app.services.sampling import random_element, random_grade

SEEDS = range(200)


@pytest.mark.parametrize(
    "text,g,expected",
    [
        ("C(a1^b1+a2^b2+a3^b3)", 3, "3"),
        ("L(L(1))", 2, "2*a1^b1^a2^b2"),
        ("a1^a1", 2, "0"),
        ("b1^a1", 1, "-a1^b1"),
        ("a2 + a1", 2, "a1 + a2"),
        ("1/2*a1 - 3*b2", 2, "1/2*a1 - 3*b2"),
        ("-a1^b1 + a1^b1", 1, "0"),
        ("2/4", 1, "1/2"),
        ("-1", 1, "-1"),
        ("(a1 + b1)^(a1 - b1)", 1, "-2*a1^b1"),
        ("C(L(a1))", 2, "a1"),
        ("  a1 ^\n b2 ", 2, "a1^b2"),
    ],
)
def test_evaluates_to_canonical_text(text, g, expected):
    assert serialize(parse_expr(text, g)) == expected


def test_unit_coefficient_kept_at_grade_zero():
    assert serialize(parse_expr("1", 2)) == "1"
    assert serialize(parse_expr("a1 - a1 + 1*a2", 2)) == "a2"


def test_format_scalar():
    assert format_scalar(Fraction(6, 4)) == "3/2"
    assert format_scalar(Fraction(-5)) == "-5"


@pytest.mark.parametrize(
    "text,column",
    [
        ("a1 +", 5),
        ("a1 ^ ^ b1", 6),
        ("a1 $ b1", 4),
        ("a", 1),
        ("C(a1^b1", 8),
        ("a1 b1", 4),
        ("1/0*a1", 3),
    ],
)
def test_syntax_errors_carry_position(text, column):
    with pytest.raises(ExpressionSyntaxError) as info:
        parse_expr(text, 2)
    assert info.value.line == 1
    assert info.value.column == column


def test_label_out_of_range_is_a_syntax_error():
    with pytest.raises(ExpressionSyntaxError) as info:
        parse_expr("a1^a3", 2)
    assert info.value.column == 4


def test_inhomogeneous_sum_is_a_syntax_error():
    with pytest.raises(ExpressionSyntaxError) as info:
        parse_expr("a1 + a1^b1", 2)
    assert info.value.column == 4


def test_error_line_numbers():
    with pytest.raises(ExpressionSyntaxError) as info:
        parse_expr("a1 +\n  ?", 2)
    assert (info.value.line, info.value.column) == (2, 3)


@pytest.mark.parametrize("text,column", [("a\u00b2", 1), ("2\u00b2", 2), ("a1 + \u00b3", 6), ("\u0661", 1)])
def test_non_ascii_digits_are_syntax_errors(text, column):
    with pytest.raises(ExpressionSyntaxError) as info:
        parse_expr(text, 2)
    assert info.value.column == column


def test_genus_must_be_positive():
    with pytest.raises(ContractViolation):
        parse_expr("1", 0)


def test_contracting_a_vector_is_a_contract_violation():
    with pytest.raises(ContractViolation):
        parse_expr("C(a1)", 2)


@pytest.mark.parametrize("seed", SEEDS)
def test_serialize_round_trip(seed):
    rng = random.Random(seed)
    g = rng.randint(1, 5)
    x = random_element(rng, g, random_grade(rng, g))
    text = serialize(x)
    back = parse_expr(text, g)
    assert back == x
    assert serialize(back) == text
