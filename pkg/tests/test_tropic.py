import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from app.errors import CrystalError, MissingVariable
from app.services.posrat import equal, parse
from app.services.tropic import TMax, teval, to_infix, tropicalize

ints = st.integers(min_value=-50, max_value=50)


def trop(text):
    return tropicalize(parse(text))


def test_basic_ratio():
    assert to_infix(trop("(c*x + y)/(x + y)")) == "max(c + x, y) - max(x, y)"


def test_powers_and_quotients():
    assert to_infix(trop("x^2*y/z")) == "2x + y - z"


def test_constants_vanish():
    assert to_infix(trop("2*x + 3")) == "max(x, 0)"


def test_teval():
    t = trop("(c*x + y)/(x + y)")
    assert teval(t, {"c": 1, "x": 0, "y": 0}) == 1
    assert teval(t, {"c": 1, "x": -3, "y": 0}) == 0
    assert teval(t, {"c": -1, "x": 2, "y": 0}) == -1


def test_teval_is_integer_only():
    from fractions import Fraction

    with pytest.raises(CrystalError):
        teval(trop("x"), {"x": Fraction(1, 2)})


def test_teval_missing_variable():
    with pytest.raises(MissingVariable):
        teval(trop("x + y"), {"x": 1})


def test_empty_max_is_rejected():
    with pytest.raises(CrystalError):
        TMax(())


@given(ints, ints, ints)
def test_semiring_rules(x, y, z):
    point = {"x": x, "y": y, "z": z}
    assert teval(trop("x*y/z"), point) == x + y - z
    assert teval(trop("x + y + z"), point) == max(x, y, z)
    assert teval(trop("(x + y)^3"), point) == 3 * max(x, y)


EQUAL_PAIRS = [
    ("(x+y)^2", "x^2+2*x*y+y^2"),
    ("x/y+y/x", "(x^2+y^2)/(x*y)"),
    ("(x^2*y+x*y^2)/(x+y)", "x*y"),
    ("(c*x+y)/(x+y)", "(y+x*c)/(y+x)"),
    ("(x+y)*(x+z)", "x^2+x*z+x*y+y*z"),
]
box = st.integers(min_value=-20, max_value=20)


@pytest.mark.parametrize("lhs,rhs", EQUAL_PAIRS)
def test_pairs_are_equal_rational_functions(lhs, rhs):
    assert equal(parse(lhs), parse(rhs))


@settings(max_examples=1000, deadline=None)
@given(pair=st.sampled_from(EQUAL_PAIRS), c=box, x=box, y=box, z=box)
def test_equal_expressions_tropicalize_alike(pair, c, x, y, z):
    point = {"c": c, "x": x, "y": y, "z": z}
    lhs, rhs = pair
    assert teval(trop(lhs), point) == teval(trop(rhs), point)
