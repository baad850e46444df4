from fractions import Fraction

import pytest

from app.errors import NegativeNotAllowed, ParseError
from app.services.expr_parser import parse_expression, tokenize
from app.services.posrat import Const, evaluate


def test_tokenize():
    types = [t.type for t in tokenize("x1 + 2*y^3")]
    assert types == ["ID", "+", "NUMBER", "*", "ID", "^", "NUMBER", "END"]


@pytest.mark.parametrize("text", ["x - y", "-x", "x + (−y)"])
def test_minus_is_rejected(text):
    with pytest.raises(NegativeNotAllowed):
        parse_expression(text)


def test_zero_constant_is_rejected():
    with pytest.raises(NegativeNotAllowed):
        parse_expression("0*x")


def test_bad_character_reports_position():
    with pytest.raises(ParseError) as info:
        parse_expression("x + $")
    assert info.value.position == 4


@pytest.mark.parametrize("text", ["(x + y", "x +", "x^0", "x y"])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_expression(text)


def test_rational_literal():
    e = parse_expression("3/4")
    assert isinstance(e, Const)
    assert e.value == Fraction(3, 4)
    assert evaluate(parse_expression("2/3*x"), {"x": 3}) == 2


def test_precedence():
    assert evaluate(parse_expression("x + y*z^2"), {"x": 1, "y": 2, "z": 3}) == 19
    assert evaluate(parse_expression("x/y/z"), {"x": 8, "y": 2, "z": 2}) == 2


def test_division_is_left_associative_after_constants():
    assert evaluate(parse_expression("x/4/2"), {"x": 8}) == 1
    assert evaluate(parse_expression("2/3^2"), {}) == Fraction(2, 9)
    assert parse_expression("6/4/3").value == Fraction(1, 2)


@pytest.mark.parametrize("text", ["_x + 1", "x + _", "x²"])
def test_identifiers_start_with_a_letter(text):
    with pytest.raises(ParseError):
        parse_expression(text)


def test_identifier_may_contain_underscore_and_digits():
    assert evaluate(parse_expression("x_1 * xb2"), {"x_1": 2, "xb2": 3}) == 6
