import random
from fractions import Fraction

import pytest

from app.errors import IndexOutOfRange, UndefinedOnChart
from app.services import geom_crystal as gc
from app.services.cartan import CHART_FAMILIES, MIN_RANK, TypeLabel
from app.services.charts import chart_names, make_point, random_chart_point
from app.services.harness import verify_chart, verify_geom_axioms, verify_sigma, verify_verma

MIN_TYPES = [TypeLabel(fam, MIN_RANK[fam]) for fam in CHART_FAMILIES]


@pytest.mark.parametrize("t", MIN_TYPES, ids=str)
def test_e_at_one_is_identity(t):
    point = random_chart_point(t, random.Random(2), bound=20)
    for i in range(t.rank + 1):
        try:
            moved = gc.geom_e(i, Fraction(1), point)
        except ZeroDivisionError:
            continue
        assert moved == point


def test_a1_e1():
    # x2 sits in front of x1 in the word (2, 1); only x1 carries letter 1
    t = TypeLabel("A1", 2)
    point = make_point(t, [2, 3])
    assert gc.geom_e(1, Fraction(5), point)["x1"] == 10
    assert gc.geom_e(1, Fraction(5), point)["x2"] == 3


def test_index_checks():
    point = make_point(TypeLabel("A1", 2), [2, 3])
    with pytest.raises(IndexOutOfRange):
        gc.geom_e(3, Fraction(2), point)


def test_a2dag_chart2_has_no_en():
    t = TypeLabel("A2dag", 2)
    point = random_chart_point(t, random.Random(0), chart=2)
    with pytest.raises(UndefinedOnChart):
        gc.geom_e(2, Fraction(2), point)
    assert gc.defined_indices(point) == [0, 1]


def test_sigma_bar_moves_a2dag_to_chart2():
    t = TypeLabel("A2dag", 2)
    point = make_point(t, [1, 2, 3, 4])
    _, y = gc.sigma_bar(point)
    assert y.chart == 2
    assert gc.sigma_bar_inverse(y) == point


@pytest.mark.parametrize("t", MIN_TYPES, ids=str)
def test_chart_closed_form(t):
    assert verify_chart(t, mode="sampled", trials=10, seed=1).passed


@pytest.mark.parametrize("t", MIN_TYPES, ids=str)
def test_geometric_axioms_sampled(t):
    report = verify_geom_axioms(t, mode="sampled", trials=15, seed=2)
    assert report.passed, report.failures[:3]


@pytest.mark.parametrize("t", MIN_TYPES, ids=str)
def test_verma_sampled(t):
    report = verify_verma(t, mode="sampled", trials=10, seed=3)
    assert report.passed, report.failures[:3]


@pytest.mark.parametrize("t", MIN_TYPES, ids=str)
def test_sigma_sampled(t):
    report = verify_sigma(t, mode="sampled", trials=10, seed=4)
    assert report.passed, report.failures[:3]


def test_verma_c1_sampled_hundred():
    report = verify_verma(TypeLabel("C1", 2), mode="sampled", trials=100)
    assert report.passed
    assert report.sample_size == 100


def test_mutated_e0_is_caught(monkeypatch):
    original = gc._e0_closed

    def doubled(p, c):
        return {k: 2 * v for k, v in original(p, c).items()}

    monkeypatch.setattr(gc, "_e0_closed", doubled)
    report = verify_geom_axioms(TypeLabel("C1", 2), mode="sampled", trials=10, seed=0)
    assert not report.passed
    assert report.failures[0]["element"]


@pytest.mark.parametrize("t", MIN_TYPES, ids=str)
def test_verma_symbolic(t):
    report = verify_verma(t, mode="symbolic")
    assert report.passed, report.failures[:3]
    assert report.mode == "symbolic"


@pytest.mark.parametrize("t", MIN_TYPES, ids=str)
def test_geometric_axioms_symbolic(t):
    report = verify_geom_axioms(t, mode="symbolic")
    assert report.passed, report.failures[:3]
    assert report.mode == "symbolic"


@pytest.mark.parametrize("t", MIN_TYPES, ids=str)
def test_sigma_symbolic(t):
    report = verify_sigma(t, mode="symbolic")
    assert report.passed, report.failures[:3]
    assert report.mode == "symbolic"


@pytest.mark.parametrize("t", MIN_TYPES, ids=str)
def test_chart_closed_form_symbolic(t):
    report = verify_chart(t, mode="symbolic")
    assert report.passed, report.failures[:3]
    assert report.mode == "symbolic"


def test_perturbed_e0_exponent_breaks_verma(monkeypatch):
    t = TypeLabel("C1", 2)
    original = gc._e0_closed

    def cubed(p, c):
        # x0 picks up R^3 instead of R^2
        out = original(p, c)
        x0, P1 = p.x(0), p.P(1)
        out["x0"] = out["x0"] * (c * x0 + P1) / (x0 + P1)
        return out

    monkeypatch.setattr(gc, "_e0_closed", cubed)
    report = verify_verma(t, mode="sampled", trials=10, seed=0)
    assert not report.passed
    first = report.failures[0]
    assert first["law"].startswith("verma(")
    assert set(first["element"]) == set(chart_names(t))
    assert set(first["c"]) == {"c1", "c2"}
