import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from app.services.b_infinity import BInfinity
from app.services.cartan import CHART_FAMILIES, MIN_RANK, TypeLabel
from app.services.crystal_core import check_axioms
from app.services import ud_tables
from app.services.charts import chart_names
from app.services.harness import verify_mu, verify_ud
from app.services.ud_tables import (
    TropicalChart,
    UDCrystal,
    as_int_point,
    mu,
    mu_inverse,
    ud_e,
    ud_f,
    ud_wt,
)

MIN_TYPES = [TypeLabel(fam, MIN_RANK[fam]) for fam in CHART_FAMILIES]
small = st.integers(min_value=-6, max_value=6)


def test_a1_e0_lowers_everything():
    t = TypeLabel("A1", 2)
    x = {"x1": 3, "x2": -1}
    assert ud_e(t, 0, x) == {"x1": 2, "x2": -2}
    assert TropicalChart(t).apply(0, x, 1) == {"x1": 2, "x2": -2}


def test_d2_middle_branch():
    t = TypeLabel("D2", 2)
    x = {"x0": 0, "x1": 1, "x2": 5, "xb1": 0}
    up = ud_e(t, 0, x)
    assert up == {"x0": 0, "x1": 0, "x2": 4, "xb1": -1}
    assert ud_f(t, 0, up) == x
    assert TropicalChart(t).apply(0, x, 1) == up


def test_mu_of_zero():
    t = TypeLabel("A1", 3)
    assert mu(t, {"x1": 0, "x2": 0, "x3": 0}) == (0, 0, 0, 0)


def test_c1_to_d2_half_integers():
    t = TypeLabel("C1", 2)
    x = {"x0": 0, "x1": 0, "x2": 1, "xb1": 0}
    b = mu(t, x)
    assert b == (0, Fraction(1, 2), Fraction(-1, 2), 0)
    assert BInfinity(TypeLabel("D2", 2)).validate(b)
    assert as_int_point(t, mu_inverse(t, b)) == x


def test_b1_to_a2odd_last_coordinate():
    t = TypeLabel("B1", 3)
    x = {"x1": 1, "x2": 4, "x3": 7, "xb2": 2, "xb1": -3}
    assert mu(t, x)[2] == 7 - 2


@pytest.mark.parametrize("t", MIN_TYPES, ids=str)
def test_tropicalized_chart_matches_tables(t):
    report = verify_ud(t, box=8, samples=150, seed=9)
    assert report.passed, report.failures[:3]


@pytest.mark.parametrize("t", MIN_TYPES, ids=str)
def test_mu_is_an_isomorphism(t):
    report = verify_mu(t, box=8, samples=300, seed=9)
    assert report.passed, report.failures[:3]


@pytest.mark.parametrize("t", MIN_TYPES, ids=str)
def test_ud_crystal_axioms(t):
    crystal = UDCrystal(t)
    rng = random.Random(4)
    assert check_axioms(crystal, [crystal.sample(rng) for _ in range(200)]).passed


def test_ud_crystal_uses_dual_cartan():
    assert UDCrystal(TypeLabel("C1", 2)).cartan.type == TypeLabel("D2", 2)


@settings(max_examples=80)
@given(small, small, small, small)
def test_wt_sums_against_marks_vanish_on_c1(x0, x1, x2, xb1):
    # sum_i (marks of the dual) * wt_i is the level of the weight, zero for a level-0 crystal
    t = TypeLabel("C1", 2)
    crystal = UDCrystal(t)
    x = {"x0": x0, "x1": x1, "x2": x2, "xb1": xb1}
    total = sum(crystal.cartan.comarks[i] * ud_wt(t, i, x) for i in range(3))
    assert total == 0


def test_mutated_table_entry_is_caught(monkeypatch):
    t = TypeLabel("C1", 2)
    original = ud_tables.ud_eps

    def shifted(t, i, x):
        return original(t, i, x) + (1 if i == 0 else 0)

    monkeypatch.setattr(ud_tables, "ud_eps", shifted)
    report = verify_ud(t, samples=50)
    assert not report.passed
    assert any(f["law"] == "trop eps = table eps" and f["index"] == 0 for f in report.failures)
    assert set(report.failures[0]["element"]) == set(chart_names(t))


def test_mutated_mu_is_caught(monkeypatch):
    t = TypeLabel("B1", 3)
    original = ud_tables.mu

    def shifted(t, x):
        b = original(t, x)
        return (b[0] + 1,) + tuple(b[1:])

    monkeypatch.setattr(ud_tables, "mu", shifted)
    report = verify_mu(t, samples=50)
    assert not report.passed
    assert set(report.failures[0]["element"]) == set(chart_names(t))
